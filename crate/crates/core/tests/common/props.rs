//! Property checks shared by the acceptance harness and the proptest suite.
//! Each returns `Err` with a description of the first counterexample.

use rand::seq::SliceRandom;
use rand::Rng;
use toricode::gfcode::{code_dimension, evaluation_matrix, min_distance, PrimeField};
use toricode::polytope::{polytope_of_degree, HPolytope};
use toricode::problem::{load_problem, Problem};
use toricode::{DegreeClass, Window};

use super::fixture;

pub const CI_FIXTURES: &[&str] =
    &["critical.json", "hirci.json", "threefold_code.json", "p123_2_9.json", "p123_1_3.json", "p2_lines.json"];

pub fn load(name: &str) -> Problem {
    load_problem(&fixture(name)).expect("fixture problem")
}

fn window(p: &Problem) -> Window {
    p.window().expect("fixture window")
}

/// If no `alpha - alpha_i` is effective, `H(alpha) = |P_alpha ∩ M|`.
pub fn low_degree_identity(p: &Problem) -> Result<usize, String> {
    let x = p.ci.variety();
    let mut checked = 0;
    for alpha in window(p).classes() {
        if p.ci.gen_degrees().iter().any(|d| x.is_effective(&(&alpha - d))) {
            continue;
        }
        let (h, c) = (p.ci.hilbert_ci(&alpha), p.ci.lattice_count(&alpha) as i64);
        if h != c {
            return Err(format!("H{alpha} = {h} but |P ∩ M| = {c}"));
        }
        checked += 1;
    }
    Ok(checked)
}

/// `H(alpha) <= H(alpha + beta_j)` for semi-ample degrees.
pub fn monotone_along_betas(p: &Problem) -> Result<(), String> {
    for alpha in window(p).classes() {
        let h = p.ci.hilbert_ci(&alpha);
        for b in p.ci.variety().betas() {
            let next = &alpha + b;
            let h2 = p.ci.hilbert_ci(&next);
            if h2 < h {
                return Err(format!("H{alpha} = {h} > H{next} = {h2}"));
            }
        }
    }
    Ok(())
}

fn sample_above<R: Rng>(p: &Problem, rng: &mut R) -> DegreeClass {
    p.ci
        .variety()
        .betas()
        .iter()
        .fold(p.ci.degree_sum(), |acc, b| &acc + &b.scale(rng.gen_range(0..6)))
}

/// `H(alpha) = deg Y` for sampled `alpha ⪰ alpha_1 + ... + alpha_n`.
pub fn stabilizes<R: Rng>(p: &Problem, rng: &mut R, samples: usize) -> Result<(), String> {
    let deg = p.ci.degree_of_ci().map_err(|e| e.to_string())?;
    for _ in 0..samples {
        let alpha = sample_above(p, rng);
        let h = p.ci.hilbert_ci(&alpha);
        if h != deg {
            return Err(format!("H{alpha} = {h}, deg Y = {deg}"));
        }
    }
    Ok(())
}

pub fn bounded_by_degree(p: &Problem) -> Result<(), String> {
    let deg = p.ci.degree_of_ci().map_err(|e| e.to_string())?;
    for alpha in window(p).classes() {
        let h = p.ci.hilbert_ci(&alpha);
        if h > deg || h < 0 {
            return Err(format!("H{alpha} = {h} outside [0, {deg}]"));
        }
    }
    Ok(())
}

/// Replacing the representative `a` by `a + phi(m)` translates the polytope
/// and keeps the count.
pub fn translation_invariant<R: Rng>(p: &Problem, rng: &mut R, trials: usize) -> Result<(), String> {
    let x = p.ci.variety();
    let classes = window(p).classes();
    for _ in 0..trials {
        let alpha = classes.choose(rng).unwrap();
        let base = polytope_of_degree(x, alpha);
        let m: Vec<i64> = (0..x.dim()).map(|_| rng.gen_range(-5..=5)).collect();
        let shifted: Vec<i64> = base.representative().iter().zip(x.phi(&m)).map(|(a, s)| a + s).collect();
        let moved = HPolytope::new(x.ray_rows().to_vec(), shifted);
        let (c0, c1) = (base.count_lattice_points(), moved.count_lattice_points());
        if c0 != c1 {
            return Err(format!("{alpha}: count {c0} vs {c1} after shifting by {m:?}"));
        }
    }
    Ok(())
}

/// The Ehrhart polynomial interpolated from dilates `0..=n` predicts the
/// count at `n + 1`.
pub fn ehrhart_predicts<R: Rng>(p: &Problem, rng: &mut R, trials: usize) -> Result<usize, String> {
    let x = p.ci.variety();
    let n = x.dim() as i64;
    let mut candidates: Vec<DegreeClass> = window(p)
        .classes()
        .into_iter()
        .filter(|a| p.ci.lattice_count(a) > 0 && polytope_of_degree(x, a).is_lattice_polytope())
        .collect();
    candidates.shuffle(rng);
    let mut checked = 0;
    for alpha in candidates.into_iter().take(trials) {
        let poly = polytope_of_degree(x, &alpha);
        let ehr = poly.ehrhart_polynomial().map_err(|e| e.to_string())?;
        let predicted = ehr.evaluate(n + 1);
        let actual = poly.dilate(n + 1).count_lattice_points();
        if predicted != actual.into() {
            return Err(format!("{alpha}: predicted {predicted}, counted {actual}"));
        }
        checked += 1;
    }
    Ok(checked)
}

/// Degrees whose codes the suite builds, per code fixture.
pub fn code_degrees(name: &str) -> Vec<DegreeClass> {
    let raw: &[&[i64]] = match name {
        "hirci.json" => &[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[0, 2], &[1, 2], &[0, 3], &[1, 3], &[2, 2], &[-1, 2]],
        "p2_lines.json" => &[&[0], &[1], &[2], &[3]],
        _ => &[],
    };
    raw.iter().map(|a| DegreeClass(a.to_vec())).collect()
}

/// Singleton bound `d <= N - k + 1` and pivot independence of `(k, d)`.
pub fn code_checks<R: Rng>(p: &Problem, alpha: &DegreeClass, rng: &mut R, pivots: usize) -> Result<(usize, u64), String> {
    let field: PrimeField = p.field().map_err(|e| e.to_string())?;
    let pts = p.points(1 << 20).map_err(|e| e.to_string())?;
    let x = p.ci.variety();
    let base = evaluation_matrix(x, alpha, &pts, &field, None).map_err(|e| e.to_string())?;
    let k = code_dimension(&base);
    let d = min_distance(&base, 1 << 22).map_err(|e| e.to_string())?;
    let n = base.length() as u64;
    if d + k as u64 > n + 1 {
        return Err(format!("{alpha}: [{n}, {k}, {d}] violates the Singleton bound"));
    }
    for _ in 0..pivots {
        let pivot = base.monomials.points.choose(rng).unwrap().clone();
        let other = evaluation_matrix(x, alpha, &pts, &field, Some(&pivot)).map_err(|e| e.to_string())?;
        let (k2, d2) = (code_dimension(&other), min_distance(&other, 1 << 22).map_err(|e| e.to_string())?);
        if (k2, d2) != (k, d) {
            return Err(format!("{alpha}: pivot {pivot:?} gives ({k2}, {d2}) instead of ({k}, {d})"));
        }
    }
    Ok((k, d))
}
