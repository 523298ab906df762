//! Fan data of a complete simplicial toric variety and its class-group grading.
//!
//! A [`ToricVariety`] is built from primitive ray generators and the list of
//! maximal cones. Construction verifies the standing assumptions (simplicial,
//! complete, torsion-free class group) and either validates a user-supplied
//! grading matrix or computes one from the Smith form of the ray matrix.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{self, rat, BigRat, IntMatrix, LinAlgError};
use crate::gfcode::field::PrimeField;
use crate::polytope;

/// Default coefficient-sum bound for the exhaustive semigroup fallback.
pub const DEFAULT_MEMBERSHIP_BOUND: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("malformed input: {0}")]
    BadInput(String),
    #[error("NotPrimitive: ray {ray} ({entries:?}) is not primitive")]
    NotPrimitive { ray: usize, entries: Vec<i64> },
    #[error("NotSimplicial: cone {cone} ({rays:?}) does not have n linearly independent rays")]
    NotSimplicial { cone: usize, rays: Vec<usize> },
    #[error("NotComplete: {0}")]
    NotComplete(String),
    #[error("TorsionClassGroup: invariant factors of the ray matrix are {0:?}")]
    TorsionClassGroup(Vec<String>),
    #[error("BadGrading: {0}")]
    BadGrading(String),
    #[error("InconclusiveMembership: no representation of {alpha} with coefficient sum <= {bound}")]
    InconclusiveMembership { alpha: DegreeClass, bound: u32 },
    #[error("ZeroCoordinate: Cox coordinate {index} is zero")]
    ZeroCoordinate { index: usize },
    #[error("degree class {0} has the wrong length")]
    WrongRank(DegreeClass),
}

/// An element of the class group, in the coordinates fixed by the grading
/// matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeClass(pub Vec<i64>);

impl DegreeClass {
    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self(self.0.iter().map(|x| x * k).collect())
    }
}

impl From<Vec<i64>> for DegreeClass {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[i64; N]> for DegreeClass {
    fn from(v: [i64; N]) -> Self {
        Self(v.to_vec())
    }
}

impl Add for &DegreeClass {
    type Output = DegreeClass;
    fn add(self, rhs: &DegreeClass) -> DegreeClass {
        assert_eq!(self.len(), rhs.len(), "degree classes of different rank");
        DegreeClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DegreeClass {
    type Output = DegreeClass;
    fn sub(self, rhs: &DegreeClass) -> DegreeClass {
        assert_eq!(self.len(), rhs.len(), "degree classes of different rank");
        DegreeClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DegreeClass {
    type Output = DegreeClass;
    fn neg(self) -> DegreeClass {
        DegreeClass(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for DegreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Complete simplicial toric variety with torsion-free class group.
#[derive(Clone, Debug)]
pub struct ToricVariety {
    n: usize,
    rays: IntMatrix,
    ray_rows: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
    grading: IntMatrix,
    betas: Vec<DegreeClass>,
    positive_relation: Vec<BigRat>,
}

impl ToricVariety {
    /// Validates the fan and fixes the grading. Cones are 0-based ray indices.
    pub fn new(
        rays: &[Vec<i64>],
        max_cones: &[Vec<usize>],
        grading: Option<&[Vec<i64>]>,
    ) -> Result<Self, FanError> {
        let r = rays.len();
        let n = rays.first().map_or(0, Vec::len);
        if r == 0 || n == 0 {
            return Err(FanError::BadInput("need at least one ray of positive length".into()));
        }
        if max_cones.is_empty() {
            return Err(FanError::BadInput("no maximal cones".into()));
        }
        if rays.iter().any(|v| v.len() != n) {
            return Err(FanError::BadInput("rays have differing lengths".into()));
        }
        for (j, v) in rays.iter().enumerate() {
            let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            if g != 1 {
                return Err(FanError::NotPrimitive { ray: j + 1, entries: v.clone() });
            }
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        for (c, cone) in max_cones.iter().enumerate() {
            let mut cone = cone.clone();
            cone.sort_unstable();
            cone.dedup();
            if let Some(&bad) = cone.iter().find(|&&j| j >= r) {
                return Err(FanError::BadInput(format!("cone {} references ray {}", c + 1, bad + 1)));
            }
            let sub: Vec<&Vec<i64>> = cone.iter().map(|&j| &rays[j]).collect();
            let independent = cone.len() == n
                && !IntMatrix::from_rows(&sub.iter().map(|v| v.as_slice()).collect::<Vec<_>>())
                    .expect("uniform rows")
                    .determinant()
                    .expect("square")
                    .is_zero();
            if !independent {
                return Err(FanError::NotSimplicial { cone: c + 1, rays: cone.iter().map(|j| j + 1).collect() });
            }
            cones.push(cone);
        }

        let ray_matrix = IntMatrix::from_rows(rays).map_err(|e| FanError::BadInput(e.to_string()))?;
        let snf = exactlin::smith_normal_form(&ray_matrix);
        let factors = snf.invariant_factors();
        if factors.len() < n {
            return Err(FanError::NotComplete("rays do not span the lattice rationally".into()));
        }
        if factors.iter().any(|f| !f.is_one()) {
            return Err(FanError::TorsionClassGroup(factors.iter().map(|f| f.to_string()).collect()));
        }

        let positive_relation = completeness_certificate(rays, &cones)?;

        let grading = match grading {
            Some(g) => validate_grading(g, &ray_matrix, n)?,
            None => computed_grading(&snf.u, n),
        };
        let grading_rows = grading.to_i64_rows().ok_or_else(|| FanError::BadGrading("entries overflow i64".into()))?;
        let betas = (0..r)
            .map(|j| DegreeClass(grading_rows.iter().map(|row| row[j]).collect()))
            .collect();

        Ok(Self {
            n,
            rays: ray_matrix,
            ray_rows: rays.to_vec(),
            max_cones: cones,
            grading,
            betas,
            positive_relation,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn num_rays(&self) -> usize {
        self.ray_rows.len()
    }

    /// Rank of the class group.
    pub fn class_rank(&self) -> usize {
        self.num_rays() - self.n
    }

    pub fn rays(&self) -> &IntMatrix {
        &self.rays
    }

    pub fn ray_rows(&self) -> &[Vec<i64>] {
        &self.ray_rows
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn grading(&self) -> &IntMatrix {
        &self.grading
    }

    pub fn betas(&self) -> &[DegreeClass] {
        &self.betas
    }

    /// Strictly positive rational weights `c` with `sum c_j v_j = 0`.
    pub fn positive_relation(&self) -> &[BigRat] {
        &self.positive_relation
    }

    /// Degree of a Cox monomial exponent vector.
    pub fn degree_of(&self, exponents: &[i64]) -> DegreeClass {
        DegreeClass(
            (0..self.class_rank())
                .map(|k| {
                    self.grading
                        .row(k)
                        .iter()
                        .zip(exponents)
                        .map(|(g, &e)| g.to_i64().expect("grading fits i64") * e)
                        .sum()
                })
                .collect(),
        )
    }

    /// `phi(m)`: the exponent vector `(<m, v_1>, ..., <m, v_r>)`.
    pub fn phi(&self, m: &[i64]) -> Vec<i64> {
        self.ray_rows.iter().map(|v| dot(v, m)).collect()
    }

    /// Degrees of the variables outside the given maximal cone.
    pub fn cone_complement_generators(&self, cone: usize) -> Vec<(usize, DegreeClass)> {
        let c = &self.max_cones[cone];
        (0..self.num_rays())
            .filter(|j| !c.contains(j))
            .map(|j| (j, self.betas[j].clone()))
            .collect()
    }

    fn check_rank(&self, alpha: &DegreeClass) -> Result<(), FanError> {
        if alpha.len() != self.class_rank() {
            return Err(FanError::WrongRank(alpha.clone()));
        }
        Ok(())
    }

    /// `alpha` lies in the semigroup generated by the variable degrees.
    pub fn is_effective(&self, alpha: &DegreeClass) -> bool {
        polytope::count_lattice_points(self, alpha) > 0
    }

    /// Semi-ample test: membership in the complement semigroup of every
    /// maximal cone.
    pub fn is_semiample(&self, alpha: &DegreeClass) -> Result<bool, FanError> {
        self.is_semiample_with_bound(alpha, DEFAULT_MEMBERSHIP_BOUND)
    }

    pub fn is_semiample_with_bound(&self, alpha: &DegreeClass, bound: u32) -> Result<bool, FanError> {
        self.check_rank(alpha)?;
        for cone in 0..self.max_cones.len() {
            let gens: Vec<DegreeClass> = self.cone_complement_generators(cone).into_iter().map(|(_, b)| b).collect();
            if !semigroup_contains(&gens, alpha, bound)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `alpha ⪯ other`, i.e. `other - alpha` is effective.
    pub fn preceq(&self, alpha: &DegreeClass, other: &DegreeClass) -> bool {
        self.is_effective(&(other - alpha))
    }

    /// Image of a Cox point with nonzero coordinates in the torus:
    /// `t_i = prod_j x_j^{<e_i, v_j>}`.
    pub fn cox_to_torus(&self, point: &[u64], field: &PrimeField) -> Result<Vec<u64>, FanError> {
        if point.len() != self.num_rays() {
            return Err(FanError::BadInput(format!(
                "Cox point has {} coordinates, expected {}",
                point.len(),
                self.num_rays()
            )));
        }
        let point: Vec<u64> = point.iter().map(|&x| field.reduce(x)).collect();
        if let Some(index) = point.iter().position(|&x| x == 0) {
            return Err(FanError::ZeroCoordinate { index });
        }
        Ok((0..self.n)
            .map(|i| {
                point
                    .iter()
                    .zip(&self.ray_rows)
                    .fold(1, |acc, (&x, v)| field.mul(acc, field.pow_signed(x, v[i])))
            })
            .collect())
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Nonnegative coordinates of `target` in the cone spanned by the rows `gens`
/// (a basis), or `None` if singular or outside.
fn cone_coordinates(gens: &[&Vec<i64>], target: &[i64]) -> Option<Vec<BigRat>> {
    let n = target.len();
    // Solve sum_k c_k gens[k] = target, i.e. G^T c = target.
    let a: Vec<Vec<BigRat>> = (0..n).map(|i| gens.iter().map(|g| rat(g[i])).collect()).collect();
    let b: Vec<BigRat> = target.iter().map(|&x| rat(x)).collect();
    let c = exactlin::solve_rational(&a, &b).ok()?;
    c.iter().all(|x| !x.is_negative()).then_some(c)
}

/// Probe-set completeness check. Every ray, negated ray and signed basis
/// vector must lie in some maximal cone; the negated-ray memberships add up to
/// a strictly positive relation among the rays, which is returned.
fn completeness_certificate(rays: &[Vec<i64>], cones: &[Vec<usize>]) -> Result<Vec<BigRat>, FanError> {
    let n = rays[0].len();
    let locate = |probe: &[i64]| -> Option<(usize, Vec<BigRat>)> {
        cones.iter().enumerate().find_map(|(ci, cone)| {
            let gens: Vec<&Vec<i64>> = cone.iter().map(|&j| &rays[j]).collect();
            cone_coordinates(&gens, probe).map(|c| (ci, c))
        })
    };
    let mut probes: Vec<Vec<i64>> = rays.to_vec();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        probes.push(e.clone());
        e[i] = -1;
        probes.push(e);
    }
    for p in &probes {
        if locate(p).is_none() {
            return Err(FanError::NotComplete(format!("probe {p:?} lies in no maximal cone")));
        }
    }
    let mut relation = vec![BigRat::zero(); rays.len()];
    for (j, v) in rays.iter().enumerate() {
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        let (ci, coeffs) = locate(&neg)
            .ok_or_else(|| FanError::NotComplete(format!("negated ray {} lies in no maximal cone", j + 1)))?;
        relation[j] += BigRat::one();
        for (&k, c) in cones[ci].iter().zip(coeffs) {
            relation[k] += c;
        }
    }
    for i in 0..n {
        let s: BigRat = relation.iter().zip(rays).map(|(c, v)| c * rat(v[i])).sum();
        if !s.is_zero() {
            return Err(FanError::NotComplete("positive relation check failed".into()));
        }
    }
    if relation.iter().any(|c| !c.is_positive()) {
        return Err(FanError::NotComplete("rays do not positively span".into()));
    }
    Ok(relation)
}

fn validate_grading(g: &[Vec<i64>], rays: &IntMatrix, n: usize) -> Result<IntMatrix, FanError> {
    let r = rays.rows();
    if g.len() != r - n || g.iter().any(|row| row.len() != r) {
        return Err(FanError::BadGrading(format!("expected a {}x{} matrix", r - n, r)));
    }
    let gm = IntMatrix::from_rows(g).map_err(|e: LinAlgError| FanError::BadGrading(e.to_string()))?;
    if !gm.mul(rays).expect("shapes checked").is_zero() {
        return Err(FanError::BadGrading("grading * rays^T is not zero".into()));
    }
    let snf = exactlin::smith_normal_form(&gm);
    let f = snf.invariant_factors();
    if f.len() != r - n || f.iter().any(|x| !x.is_one()) {
        return Err(FanError::BadGrading("grading is not surjective onto Z^(r-n)".into()));
    }
    Ok(gm)
}

/// Last `r - n` rows of the left Smith transform coordinatize the cokernel.
fn computed_grading(u: &IntMatrix, n: usize) -> IntMatrix {
    let r = u.rows();
    let mut entries: Vec<BigInt> = (n..r).flat_map(|i| u.row(i).to_vec()).collect();
    if r - n == 1 && entries.iter().sum::<BigInt>().is_negative() {
        entries.iter_mut().for_each(|x| *x = -x.clone());
    }
    IntMatrix::new(r - n, r, entries).expect("shape")
}

/// Membership of `alpha` in the semigroup generated by `gens`.
///
/// With a linearly independent square generating set the unique rational
/// coordinates decide it; otherwise bounded search up to `bound`.
pub fn semigroup_contains(gens: &[DegreeClass], alpha: &DegreeClass, bound: u32) -> Result<bool, FanError> {
    let d = alpha.len();
    if gens.len() == d {
        let a: Vec<Vec<BigRat>> = (0..d).map(|i| gens.iter().map(|g| rat(g.0[i])).collect()).collect();
        let b: Vec<BigRat> = alpha.0.iter().map(|&x| rat(x)).collect();
        if let Ok(c) = exactlin::solve_rational(&a, &b) {
            return Ok(c.iter().all(|x| x.is_integer() && !x.is_negative()));
        }
    }
    if alpha.is_zero() {
        return Ok(true);
    }
    // Bounded exhaustive search over coefficient vectors with sum <= bound.
    fn search(gens: &[DegreeClass], idx: usize, remaining: &DegreeClass, budget: u32) -> bool {
        if remaining.is_zero() {
            return true;
        }
        if idx == gens.len() {
            return false;
        }
        let mut rem = remaining.clone();
        for used in 0..=budget {
            if search(gens, idx + 1, &rem, budget - used) {
                return true;
            }
            rem = &rem - &gens[idx];
        }
        false
    }
    if search(gens, 0, alpha, bound) {
        Ok(true)
    } else {
        Err(FanError::InconclusiveMembership { alpha: alpha.clone(), bound })
    }
}
