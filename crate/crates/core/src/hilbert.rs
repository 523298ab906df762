//! Multigraded Hilbert functions of zero-dimensional complete intersections.
//!
//! For a complete intersection cut out by forms of degrees `alpha_1..alpha_n`
//! the Koszul resolution gives
//!
//! ```text
//! H_Y(alpha) = sum_{I ⊆ [n]} (-1)^|I| * |P_{alpha - alpha_I} ∩ M|
//! ```
//!
//! with `alpha_I = sum_{i in I} alpha_i`. Every term is a lattice-point count,
//! so the whole function is combinatorial. The same subset sums give the
//! numerator of the Hilbert series.

use std::collections::BTreeMap;
use std::fmt;

use dashmap::DashMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polytope;
use crate::toricfan::{DegreeClass, FanError, ToricVariety};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HilbertError {
    #[error("a complete intersection in dimension {expected} needs {expected} degrees, got {got}")]
    WrongDegreeCount { expected: usize, got: usize },
    #[error("generator degree {0} is not effective")]
    IneffectiveDegree(DegreeClass),
    #[error("RequiresSemiample: the degree of Y is only available for semi-ample generator degrees")]
    RequiresSemiample,
    #[error("NotRankOneGrading: the a-invariant formula needs a weighted projective space")]
    NotRankOneGrading,
    #[error("bad window: {0}")]
    BadWindow(String),
    #[error(transparent)]
    Fan(#[from] FanError),
}

/// A complete intersection problem: the ambient variety and `n` generator
/// degrees.
#[derive(Debug)]
pub struct CiProblem {
    variety: ToricVariety,
    gen_degrees: Vec<DegreeClass>,
    semiample: bool,
    /// `(alpha_I, (-1)^|I|)` for all subsets `I`.
    subset_terms: Vec<(DegreeClass, i64)>,
    counts: DashMap<DegreeClass, u64>,
}

impl CiProblem {
    pub fn new(variety: ToricVariety, gen_degrees: Vec<DegreeClass>) -> Result<Self, HilbertError> {
        if gen_degrees.len() != variety.dim() {
            return Err(HilbertError::WrongDegreeCount { expected: variety.dim(), got: gen_degrees.len() });
        }
        for d in &gen_degrees {
            if d.len() != variety.class_rank() {
                return Err(FanError::WrongRank(d.clone()).into());
            }
            if !variety.is_effective(d) {
                return Err(HilbertError::IneffectiveDegree(d.clone()));
            }
        }
        let mut semiample = true;
        for d in &gen_degrees {
            if !variety.is_semiample(d)? {
                semiample = false;
                break;
            }
        }
        let subset_terms = subset_sums(&gen_degrees, variety.class_rank());
        Ok(Self { variety, gen_degrees, semiample, subset_terms, counts: DashMap::new() })
    }

    pub fn variety(&self) -> &ToricVariety {
        &self.variety
    }

    pub fn gen_degrees(&self) -> &[DegreeClass] {
        &self.gen_degrees
    }

    pub fn all_semiample(&self) -> bool {
        self.semiample
    }

    /// `alpha_1 + ... + alpha_n`, the anchor of the regularity bound.
    pub fn degree_sum(&self) -> DegreeClass {
        self.gen_degrees
            .iter()
            .fold(DegreeClass::zero(self.variety.class_rank()), |acc, d| &acc + d)
    }

    /// Cached `|P_alpha ∩ M|`.
    pub fn lattice_count(&self, alpha: &DegreeClass) -> u64 {
        if let Some(c) = self.counts.get(alpha) {
            return *c;
        }
        let c = polytope::count_lattice_points(&self.variety, alpha);
        self.counts.insert(alpha.clone(), c);
        c
    }

    /// Inclusion–exclusion over all subsets of generator degrees. Defined for
    /// every class; ineffective shifts contribute zero.
    pub fn hilbert_ci(&self, alpha: &DegreeClass) -> i64 {
        self.subset_terms
            .iter()
            .map(|(shift, sign)| sign * self.lattice_count(&(alpha - shift)) as i64)
            .sum()
    }

    /// `deg Y = H_Y(alpha_1 + ... + alpha_n)`; only for semi-ample degrees.
    pub fn degree_of_ci(&self) -> Result<i64, HilbertError> {
        if !self.semiample {
            return Err(HilbertError::RequiresSemiample);
        }
        Ok(self.hilbert_ci(&self.degree_sum()))
    }

    pub fn hilbert_table(&self, window: &Window) -> Result<HilbertTable, HilbertError> {
        window.check(self.variety.class_rank())?;
        let cells = window.classes();
        let values: Vec<i64> = cells.par_iter().map(|a| self.hilbert_ci(a)).collect();
        Ok(HilbertTable { window: window.clone(), values })
    }

    /// Effective classes in the window where the Hilbert function has reached
    /// the degree.
    pub fn regularity_scan(&self, window: &Window) -> Result<RegularityScan, HilbertError> {
        let degree = self.degree_of_ci()?;
        let table = self.hilbert_table(window)?;
        let members = table
            .iter()
            .filter(|(a, h)| *h == degree && self.lattice_count(a) > 0)
            .map(|(a, _)| a)
            .collect();
        Ok(RegularityScan { degree, anchor: self.degree_sum(), members })
    }

    pub fn koszul_numerator(&self) -> KoszulNumerator {
        koszul_numerator(&self.gen_degrees, self.variety.class_rank())
    }
}

fn subset_sums(degrees: &[DegreeClass], rank: usize) -> Vec<(DegreeClass, i64)> {
    let n = degrees.len();
    (0u32..1 << n)
        .map(|mask| {
            let mut sum = DegreeClass::zero(rank);
            for (i, d) in degrees.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    sum = &sum + d;
                }
            }
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            (sum, sign)
        })
        .collect()
}

/// Inclusive box of degree classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub min: Vec<i64>,
    pub max: Vec<i64>,
}

impl Window {
    pub fn new(min: Vec<i64>, max: Vec<i64>) -> Result<Self, HilbertError> {
        let w = Self { min, max };
        w.check(w.min.len())?;
        Ok(w)
    }

    fn check(&self, rank: usize) -> Result<(), HilbertError> {
        if self.min.len() != rank || self.max.len() != rank {
            return Err(HilbertError::BadWindow(format!("window must have {rank} coordinates")));
        }
        if self.min.iter().zip(&self.max).any(|(a, b)| a > b) {
            return Err(HilbertError::BadWindow("min exceeds max".into()));
        }
        Ok(())
    }

    pub fn contains(&self, alpha: &DegreeClass) -> bool {
        alpha.coords().iter().zip(self.min.iter().zip(&self.max)).all(|(x, (lo, hi))| lo <= x && x <= hi)
    }

    /// All classes, first coordinate slowest.
    pub fn classes(&self) -> Vec<DegreeClass> {
        let mut out = vec![Vec::new()];
        for (lo, hi) in self.min.iter().zip(&self.max) {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (*lo..=*hi).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(DegreeClass).collect()
    }
}

/// Hilbert function values over a window, in [`Window::classes`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertTable {
    pub window: Window,
    pub values: Vec<i64>,
}

/// One machine-readable table record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub alpha: Vec<i64>,
    pub h: i64,
}

impl HilbertTable {
    pub fn iter(&self) -> impl Iterator<Item = (DegreeClass, i64)> + '_ {
        self.window.classes().into_iter().zip(self.values.iter().copied())
    }

    pub fn get(&self, alpha: &DegreeClass) -> Option<i64> {
        if !self.window.contains(alpha) {
            return None;
        }
        let mut idx = 0usize;
        for ((x, lo), hi) in alpha.coords().iter().zip(&self.window.min).zip(&self.window.max) {
            idx = idx * (hi - lo + 1) as usize + (x - lo) as usize;
        }
        Some(self.values[idx])
    }

    pub fn origin_value(&self) -> Option<i64> {
        self.get(&DegreeClass::zero(self.window.min.len()))
    }

    pub fn records(&self) -> Vec<TableRecord> {
        self.iter().map(|(a, h)| TableRecord { alpha: a.0, h }).collect()
    }

    /// Aligned grid. In rank 2 the rows run over the second coordinate from
    /// top (largest) to bottom and columns over the first; the origin cell is
    /// bracketed. Other ranks print one record per line.
    pub fn render_text(&self) -> String {
        let rank = self.window.min.len();
        let cell = |a: &DegreeClass, h: i64| {
            if a.is_zero() {
                format!("[{h}]")
            } else {
                h.to_string()
            }
        };
        match rank {
            1 | 2 => {
                let (blo, bhi) = if rank == 2 { (self.window.min[1], self.window.max[1]) } else { (0, 0) };
                let (alo, ahi) = (self.window.min[0], self.window.max[0]);
                let at = |a: i64, b: i64| {
                    let c = if rank == 2 { DegreeClass(vec![a, b]) } else { DegreeClass(vec![a]) };
                    let h = self.get(&c).expect("inside window");
                    cell(&c, h)
                };
                let width = (alo..=ahi)
                    .flat_map(|a| (blo..=bhi).map(move |b| (a, b)))
                    .map(|(a, b)| at(a, b).len())
                    .chain((alo..=ahi).map(|a| a.to_string().len()))
                    .max()
                    .unwrap_or(1);
                let label_width = (blo..=bhi).map(|b| format!("b={b}").len()).max().unwrap_or(0);
                let mut out = String::new();
                for b in (blo..=bhi).rev() {
                    if rank == 2 {
                        out.push_str(&format!("{:>label_width$} |", format!("b={b}")));
                    }
                    for a in alo..=ahi {
                        out.push_str(&format!(" {:>width$}", at(a, b)));
                    }
                    out.push('\n');
                }
                if rank == 2 {
                    out.push_str(&format!("{:>label_width$} +", ""));
                    out.push_str(&"-".repeat((width + 1) * (ahi - alo + 1) as usize));
                    out.push('\n');
                    out.push_str(&format!("{:>label_width$}  ", "a"));
                } else {
                    out.push_str("a:");
                }
                for a in alo..=ahi {
                    out.push_str(&format!(" {:>width$}", a));
                }
                out.push('\n');
                out
            }
            _ => self.iter().map(|(a, h)| format!("{a} {}\n", cell(&a, h))).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityScan {
    pub degree: i64,
    /// `alpha_1 + ... + alpha_n`.
    pub anchor: DegreeClass,
    pub members: Vec<DegreeClass>,
}

/// Numerator of the Hilbert series over `prod_j (1 - t^{beta_j})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulNumerator {
    pub terms: BTreeMap<DegreeClass, i64>,
}

pub fn koszul_numerator(degrees: &[DegreeClass], rank: usize) -> KoszulNumerator {
    let mut terms = BTreeMap::new();
    for (d, sign) in subset_sums(degrees, rank) {
        *terms.entry(d).or_insert(0) += sign;
    }
    terms.retain(|_, c| *c != 0);
    KoszulNumerator { terms }
}

impl KoszulNumerator {
    pub fn coefficient(&self, alpha: &DegreeClass) -> i64 {
        self.terms.get(alpha).copied().unwrap_or(0)
    }

    pub fn coefficient_sum(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl fmt::Display for KoszulNumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            let mono = if d.is_zero() {
                String::new()
            } else if d.len() == 1 {
                if d.0[0] == 1 { "t".to_string() } else { format!("t^{}", d.0[0]) }
            } else {
                format!("t^{d}")
            };
            let mag = c.abs();
            let body = match (mag, mono.is_empty()) {
                (1, false) => mono,
                (_, true) => mag.to_string(),
                _ => format!("{mag}{mono}"),
            };
            match (i, *c < 0) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// Result of the weighted-projective a-invariant formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInvariant {
    pub value: i64,
    /// Only meaningful if `S/I(Y)` has a non-zerodivisor of degree one, which
    /// is not checked here. When it holds, `reg(Y) = 1 + value + N`.
    pub needs_degree_one_nonzerodivisor: bool,
}

impl AInvariant {
    pub fn regularity_anchor(&self) -> i64 {
        self.value + 1
    }
}

/// `deg(numerator) - sum_j beta_j` on a weighted projective space.
pub fn a_invariant_wps(x: &ToricVariety, numerator: &KoszulNumerator) -> Result<AInvariant, HilbertError> {
    if x.class_rank() != 1 || x.betas().iter().any(|b| b.0[0] <= 0) {
        return Err(HilbertError::NotRankOneGrading);
    }
    let top = numerator.terms.keys().map(|d| d.0[0]).max().unwrap_or(0);
    let weights: i64 = x.betas().iter().map(|b| b.0[0]).sum();
    Ok(AInvariant { value: top - weights, needs_degree_one_nonzerodivisor: true })
}
