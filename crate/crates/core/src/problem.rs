//! JSON input formats.
//!
//! Variety files:
//!
//! ```json
//! { "n": 2, "rays": [[1,0],[0,1],[-1,2],[0,-1]],
//!   "max_cones": [[1,2],[2,3],[3,4],[4,1]],
//!   "grading": [[1,-2,1,0],[0,1,0,1]] }
//! ```
//!
//! Cones are 1-based; `grading` is optional. Problem files name a variety
//! file relative to themselves and add the generator degrees, a window and,
//! for codes, the field, the system or points, and the degree to evaluate.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gfcode::{find_torus_zeros, CodeError, LaurentPoly, PointSet, PrimeField};
use crate::hilbert::{CiProblem, HilbertError, Window};
use crate::toricfan::{DegreeClass, FanError, ToricVariety};

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot parse {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("{0}")]
    Missing(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyFile {
    pub n: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<Vec<i64>>>,
}

impl VarietyFile {
    pub fn build(&self) -> Result<ToricVariety, FanError> {
        if self.rays.iter().any(|r| r.len() != self.n) {
            return Err(FanError::BadInput(format!("every ray needs {} entries", self.n)));
        }
        let cones = self
            .max_cones
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&i| {
                        i.checked_sub(1)
                            .filter(|&j| j < self.rays.len())
                            .ok_or_else(|| FanError::BadInput(format!("cone index {i} out of range")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        ToricVariety::new(&self.rays, &cones, self.grading.as_deref())
    }
}

/// One term `c * t^e` of a Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub c: i64,
    pub e: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemFile {
    pub variety: String,
    pub ci_degrees: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<Window>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<Vec<Vec<TermSpec>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pivot: Option<Vec<i64>>,
}

/// A problem file with its variety resolved and validated.
#[derive(Debug)]
pub struct Problem {
    pub file: ProblemFile,
    pub ci: CiProblem,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, ProblemError> {
    let text = fs::read_to_string(path).map_err(|source| ProblemError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| ProblemError::Json { path: path.into(), source })
}

pub fn load_variety_file(path: &Path) -> Result<VarietyFile, ProblemError> {
    read_json(path)
}

pub fn load_variety(path: &Path) -> Result<ToricVariety, ProblemError> {
    Ok(load_variety_file(path)?.build()?)
}

pub fn load_problem(path: &Path) -> Result<Problem, ProblemError> {
    let file: ProblemFile = read_json(path)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let variety = load_variety(&base.join(&file.variety))?;
    let degrees = file.ci_degrees.iter().cloned().map(DegreeClass).collect();
    let ci = CiProblem::new(variety, degrees)?;
    Ok(Problem { file, ci })
}

impl Problem {
    pub fn window(&self) -> Result<Window, ProblemError> {
        self.file.window.clone().ok_or_else(|| ProblemError::Missing("problem has no window".into()))
    }

    pub fn field(&self) -> Result<PrimeField, ProblemError> {
        let q = self.file.q.ok_or_else(|| ProblemError::Missing("code problem needs \"q\"".into()))?;
        Ok(PrimeField::new(q)?)
    }

    pub fn alpha(&self) -> Result<DegreeClass, ProblemError> {
        self.file.alpha.clone().map(DegreeClass).ok_or_else(|| ProblemError::Missing("code problem needs \"alpha\"".into()))
    }

    /// Laurent system, if the problem gives one.
    pub fn system(&self) -> Result<Option<Vec<LaurentPoly>>, ProblemError> {
        let Some(sys) = &self.file.system else { return Ok(None) };
        let field = self.field()?;
        let n = self.ci.variety().dim();
        let polys = sys
            .iter()
            .map(|p| {
                let terms: Vec<(i64, Vec<i64>)> = p.iter().map(|t| (t.c, t.e.clone())).collect();
                LaurentPoly::new(field, n, &terms)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Some(polys))
    }

    /// Explicit points if given, otherwise the torus zeros of the system.
    pub fn points(&self, budget: u64) -> Result<PointSet, ProblemError> {
        let field = self.field()?;
        if let Some(pts) = &self.file.points {
            return Ok(PointSet::new(&field, pts.clone())?);
        }
        match self.system()? {
            Some(sys) => Ok(find_torus_zeros(&sys, &field, self.ci.variety().dim(), budget)?),
            None => Err(ProblemError::Missing("code problem needs \"system\" or \"points\"".into())),
        }
    }
}
