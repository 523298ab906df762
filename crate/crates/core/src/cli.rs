//! The `toricode` command line.
//!
//! Every subcommand builds one serializable report; `--json` prints it as
//! JSON, otherwise it is rendered as text. Both views carry the same numbers.
//!
//! Exit codes: 0 success, 2 validation failure, 3 cross-check failure,
//! 4 budget exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::gfcode::{self, code_dimension, evaluation_matrix, min_distance, CodeError, CodeParameters};
use crate::hilbert::{a_invariant_wps, TableRecord, Window};
use crate::problem::{self, Problem, ProblemError};
use crate::toricfan::DegreeClass;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_CROSS_CHECK: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "toricode", version, about = "Hilbert functions and evaluation codes of toric complete intersections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Override the problem window, e.g. `-10,0:10,2`.
    #[arg(long, global = true, value_parser = parse_window)]
    pub window: Option<Window>,
    /// Cap on torus points scanned by `points` and `code`.
    #[arg(long, global = true, default_value_t = gfcode::DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_points: u64,
    /// Cap on codewords enumerated for the minimum distance.
    #[arg(long, global = true, default_value_t = gfcode::DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_codewords: u64,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a variety file and print its grading.
    Validate { variety: PathBuf },
    /// Print the Hilbert function over the window.
    Table {
        problem: PathBuf,
        /// Also print deg Y (needs semi-ample degrees).
        #[arg(long)]
        degree: bool,
    },
    /// List the classes in the window where H reaches deg Y.
    Regularity { problem: PathBuf },
    /// Solve the problem's Laurent system over F_q.
    Points { problem: PathBuf },
    /// Build the evaluation code and its parameters.
    Code {
        problem: PathBuf,
        /// Degree to evaluate, overriding the problem's `alpha`.
        #[arg(long, value_parser = parse_class, allow_hyphen_values = true)]
        alpha: Option<DegreeClass>,
    },
    /// Print the Hilbert series numerator.
    Numerator { problem: PathBuf },
}

fn parse_class(s: &str) -> Result<DegreeClass, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(DegreeClass)
}

fn parse_window(s: &str) -> Result<Window, String> {
    let (lo, hi) = s.split_once(':').ok_or("expected MIN:MAX, e.g. -10,0:10,2")?;
    Window::new(parse_class(lo)?.0, parse_class(hi)?.0).map_err(|e| e.to_string())
}

/// Failure with its exit code. The message is already formatted.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<ProblemError> for Failure {
    fn from(e: ProblemError) -> Self {
        let code = match &e {
            ProblemError::Code(CodeError::BudgetExceeded { .. }) => EXIT_BUDGET,
            _ => EXIT_VALIDATION,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<CodeError> for Failure {
    fn from(e: CodeError) -> Self {
        ProblemError::from(e).into()
    }
}

impl From<crate::hilbert::HilbertError> for Failure {
    fn from(e: crate::hilbert::HilbertError) -> Self {
        ProblemError::from(e).into()
    }
}

/// A report plus its text rendering and the exit code to use once printed.
struct Outcome {
    json: serde_json::Value,
    text: String,
    code: i32,
}

impl Outcome {
    fn ok<T: Serialize>(report: &T, text: String) -> Self {
        Self::with_code(report, text, EXIT_OK)
    }

    fn with_code<T: Serialize>(report: &T, text: String, code: i32) -> Self {
        let json = serde_json::to_value(report).expect("reports serialize");
        Self { json, text, code }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    execute(&cli, out, err)
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Validate { variety } => cmd_validate(variety),
        Command::Table { problem, degree } => cmd_table(cli, problem, *degree),
        Command::Regularity { problem } => cmd_regularity(cli, problem),
        Command::Points { problem } => cmd_points(cli, problem),
        Command::Code { problem, alpha } => cmd_code(cli, problem, alpha.as_ref()),
        Command::Numerator { problem } => cmd_numerator(problem),
    };
    match result {
        Ok(o) => {
            let written = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json"))
            } else {
                write!(out, "{}", o.text)
            };
            if written.is_err() {
                return EXIT_VALIDATION;
            }
            o.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().bytes().map(|b| DIGITS[(b - b'0') as usize]).collect()
}

fn fmt_vec(v: &[i64]) -> String {
    DegreeClass(v.to_vec()).to_string()
}

#[derive(Serialize)]
struct ConeReport {
    rays: Vec<usize>,
    /// `(ray index, beta)` for rays outside the cone, 1-based.
    complement: Vec<(usize, Vec<i64>)>,
}

#[derive(Serialize)]
struct ValidateReport {
    ok: bool,
    r: usize,
    n: usize,
    class_rank: usize,
    torsion_free: bool,
    rays: Vec<Vec<i64>>,
    betas: Vec<Vec<i64>>,
    cones: Vec<ConeReport>,
}

fn cmd_validate(path: &PathBuf) -> Result<Outcome, Failure> {
    let x = problem::load_variety(path)?;
    let report = ValidateReport {
        ok: true,
        r: x.num_rays(),
        n: x.dim(),
        class_rank: x.class_rank(),
        torsion_free: true,
        rays: x.ray_rows().to_vec(),
        betas: x.betas().iter().map(|b| b.0.clone()).collect(),
        cones: (0..x.max_cones().len())
            .map(|i| ConeReport {
                rays: x.max_cones()[i].iter().map(|j| j + 1).collect(),
                complement: x.cone_complement_generators(i).into_iter().map(|(j, b)| (j + 1, b.0)).collect(),
            })
            .collect(),
    };
    let mut text = format!(
        "OK: r={} n={}, Cl ≅ ℤ{}, betas {}\n",
        report.r,
        report.n,
        superscript(report.class_rank),
        report.betas.iter().map(|b| fmt_vec(b)).collect::<String>()
    );
    text.push_str(&format!(
        "rays: {}\n",
        report.rays.iter().map(|r| fmt_vec(r)).collect::<Vec<_>>().join(" ")
    ));
    for (i, c) in report.cones.iter().enumerate() {
        let rays: Vec<String> = c.rays.iter().map(|j| j.to_string()).collect();
        let gens: Vec<String> = c.complement.iter().map(|(j, b)| format!("D{j}:{}", fmt_vec(b))).collect();
        text.push_str(&format!("cone {} {{{}}}: σ̂ = {{{}}}\n", i + 1, rays.join(","), gens.join(", ")));
    }
    Ok(Outcome::ok(&report, text))
}

fn load(path: &PathBuf) -> Result<Problem, Failure> {
    Ok(problem::load_problem(path)?)
}

fn window_for(cli: &Cli, p: &Problem) -> Result<Window, Failure> {
    match &cli.window {
        Some(w) => Ok(w.clone()),
        None => Ok(p.window()?),
    }
}

#[derive(Serialize)]
struct TableReport {
    window: Window,
    anchor: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<i64>,
    records: Vec<TableRecord>,
}

fn cmd_table(cli: &Cli, path: &PathBuf, want_degree: bool) -> Result<Outcome, Failure> {
    let p = load(path)?;
    let window = window_for(cli, &p)?;
    let table = p.ci.hilbert_table(&window)?;
    let degree = if want_degree { Some(p.ci.degree_of_ci()?) } else { None };
    let report = TableReport { window, anchor: p.ci.degree_sum().0, degree, records: table.records() };
    let mut text = table.render_text();
    text.push_str(&format!("anchor Σα_i = {}\n", fmt_vec(&report.anchor)));
    if let Some(d) = degree {
        text.push_str(&format!("deg Y = {d}\n"));
    }
    Ok(Outcome::ok(&report, text))
}

#[derive(Serialize)]
struct RegularityReport {
    degree: i64,
    anchor: Vec<i64>,
    members: Vec<Vec<i64>>,
    seed: u64,
    /// Sampled classes `alpha ⪰ anchor` with their Hilbert values.
    samples: Vec<TableRecord>,
    stable: bool,
}

fn cmd_regularity(cli: &Cli, path: &PathBuf) -> Result<Outcome, Failure> {
    let p = load(path)?;
    let window = window_for(cli, &p)?;
    let scan = p.ci.regularity_scan(&window)?;
    let betas = p.ci.variety().betas();
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let samples: Vec<TableRecord> = (0..10)
        .map(|_| {
            let alpha = betas.iter().fold(scan.anchor.clone(), |acc, b| &acc + &b.scale(rng.gen_range(0..5)));
            let h = p.ci.hilbert_ci(&alpha);
            TableRecord { alpha: alpha.0, h }
        })
        .collect();
    let stable = samples.iter().all(|s| s.h == scan.degree);
    let report = RegularityReport {
        degree: scan.degree,
        anchor: scan.anchor.0.clone(),
        members: scan.members.iter().map(|m| m.0.clone()).collect(),
        seed: cli.seed,
        samples,
        stable,
    };
    let mut text = format!("deg Y = {}\nanchor Σα_i = {}\n", report.degree, fmt_vec(&report.anchor));
    text.push_str(&format!("H = deg Y at {} classes in the window:\n", report.members.len()));
    for m in &report.members {
        text.push_str(&format!("  {}\n", fmt_vec(m)));
    }
    text.push_str(&format!("stabilization check (seed {}):\n", report.seed));
    for s in &report.samples {
        text.push_str(&format!("  H{} = {}\n", fmt_vec(&s.alpha), s.h));
    }
    text.push_str(if stable { "stable: OK\n" } else { "stable: FAILED\n" });
    let code = if stable { EXIT_OK } else { EXIT_CROSS_CHECK };
    Ok(Outcome::with_code(&report, text, code))
}

#[derive(Serialize)]
struct PointsReport {
    q: u64,
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<i64>,
    points: Vec<Vec<u64>>,
}

fn cmd_points(cli: &Cli, path: &PathBuf) -> Result<Outcome, Failure> {
    let p = load(path)?;
    let field = p.field()?;
    let pts = p.points(cli.budget_points)?;
    let report = PointsReport {
        q: field.order(),
        count: pts.len(),
        degree: p.ci.degree_of_ci().ok(),
        points: pts.points().to_vec(),
    };
    let mut text = format!("{} points in the torus over F_{}\n", report.count, report.q);
    if let Some(d) = report.degree {
        let verdict = if d == report.count as i64 { "met" } else { "not met" };
        text.push_str(&format!("deg Y = {d}: bound {verdict}\n"));
    }
    for pt in &report.points {
        let coords: Vec<String> = pt.iter().map(|c| c.to_string()).collect();
        text.push_str(&format!("({})\n", coords.join(",")));
    }
    Ok(Outcome::ok(&report, text))
}

#[derive(Serialize)]
struct CodeReport {
    q: u64,
    alpha: Vec<i64>,
    n: usize,
    k: usize,
    d: Option<u64>,
    d_status: &'static str,
    hilbert: i64,
    agreement: bool,
    /// `k = N`: the code is all of `F_q^N`.
    trivial: bool,
    above_degree_sum: bool,
    pivot: Vec<i64>,
    basis_monomials: Vec<Vec<i64>>,
    points: Vec<Vec<u64>>,
    matrix: Vec<Vec<u64>>,
}

fn cmd_code(cli: &Cli, path: &PathBuf, alpha: Option<&DegreeClass>) -> Result<Outcome, Failure> {
    let p = load(path)?;
    let field = p.field()?;
    let alpha = match alpha {
        Some(a) => a.clone(),
        None => p.alpha()?,
    };
    if alpha.len() != p.ci.variety().class_rank() {
        return Err(Failure { code: EXIT_VALIDATION, message: format!("alpha {alpha} has the wrong length") });
    }
    let pts = p.points(cli.budget_points)?;
    let code = evaluation_matrix(p.ci.variety(), &alpha, &pts, &field, p.file.pivot.as_deref())?;
    let k = code_dimension(&code);
    let (d, d_status) = match min_distance(&code, cli.budget_codewords) {
        Ok(d) => (Some(d), "computed"),
        Err(CodeError::BudgetExceeded { .. }) => (None, "skipped(budget)"),
        Err(e) => return Err(e.into()),
    };
    let hilbert = p.ci.hilbert_ci(&alpha);
    let params = CodeParameters { length: code.length(), dimension: k, min_distance: d, q: field.order() };
    let report = CodeReport {
        q: field.order(),
        alpha: alpha.0.clone(),
        n: params.length,
        k,
        d,
        d_status,
        hilbert,
        agreement: hilbert == k as i64,
        trivial: k == params.length,
        above_degree_sum: p.ci.variety().preceq(&p.ci.degree_sum(), &alpha),
        pivot: code.pivot.clone(),
        basis_monomials: code.basis_monomials(),
        points: pts.points().to_vec(),
        matrix: code.matrix.rows.clone(),
    };
    let mut text = format!("{params}\n");
    text.push_str(&format!("N = {}, k = {}\n", report.n, report.k));
    match d {
        Some(d) => text.push_str(&format!("d: {d}\n")),
        None => text.push_str("d: skipped(budget)\n"),
    }
    text.push_str(&format!(
        "H{} = {}, rank = {}: agreement {}\n",
        fmt_vec(&report.alpha),
        hilbert,
        k,
        if report.agreement { "OK" } else { "FAILED" }
    ));
    if report.above_degree_sum {
        text.push_str("trivial (α ⪰ Σα_i)\n");
    } else if report.trivial {
        text.push_str("trivial (k = N)\n");
    }
    text.push_str(&format!("pivot {}\n", fmt_vec(&report.pivot)));
    text.push_str(&format!(
        "basis monomials: {}\n",
        report.basis_monomials.iter().map(|m| fmt_vec(m)).collect::<Vec<_>>().join(" ")
    ));
    text.push_str("generator matrix:\n");
    text.push_str(&code.matrix.render());
    text.push('\n');
    let exit = if report.agreement { EXIT_OK } else { EXIT_CROSS_CHECK };
    Ok(Outcome::with_code(&report, text, exit))
}

#[derive(Serialize)]
struct NumeratorReport {
    numerator: String,
    terms: Vec<(Vec<i64>, i64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a_invariant: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    regularity_anchor: Option<i64>,
}

fn cmd_numerator(path: &PathBuf) -> Result<Outcome, Failure> {
    let p = load(path)?;
    let num = p.ci.koszul_numerator();
    let a = a_invariant_wps(p.ci.variety(), &num).ok();
    let report = NumeratorReport {
        numerator: num.to_string(),
        terms: num.terms.iter().map(|(d, c)| (d.0.clone(), *c)).collect(),
        a_invariant: a.as_ref().map(|a| a.value),
        regularity_anchor: a.as_ref().map(|a| a.regularity_anchor()),
    };
    let mut text = format!("numerator: {}\n", report.numerator);
    if let Some(a) = &a {
        text.push_str(&format!(
            "a = {}, regularity from {} (if S/I(Y) has a degree-one non-zerodivisor)\n",
            a.value,
            a.regularity_anchor()
        ));
    }
    Ok(Outcome::ok(&report, text))
}
