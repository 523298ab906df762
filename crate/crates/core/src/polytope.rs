//! Rational polytopes of divisor classes and their lattice points.
//!
//! For a class `alpha` with Cox representative `a` (so `deg(a) = alpha`) the
//! polytope is `{ m : <m, v_j> >= -a_j for all j }`. Its lattice points index
//! the monomials of degree `alpha`, so counting them gives `dim S_alpha`.
//! Vertices are found by brute force over all `n`-subsets of facet
//! hyperplanes; lattice points by scanning the exact bounding box.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::exactlin::{self, rat, BigRat};
use crate::toricfan::{dot, DegreeClass, ToricVariety};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("NotLatticePolytope: vertex {0} is not integral")]
    NotLatticePolytope(String),
}

/// `{ m in R^n : <m, v_j> >= -a_j }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    rays: Vec<Vec<i64>>,
    rhs: Vec<i64>,
}

/// Lattice points in lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LatticePointSet {
    pub points: Vec<Vec<i64>>,
}

impl LatticePointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.points.iter()
    }
}

impl HPolytope {
    pub fn new(rays: Vec<Vec<i64>>, rhs: Vec<i64>) -> Self {
        assert_eq!(rays.len(), rhs.len(), "one right-hand side per ray");
        Self { rays, rhs }
    }

    pub fn dim(&self) -> usize {
        self.rays.first().map_or(0, Vec::len)
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// The Cox representative `a`.
    pub fn representative(&self) -> &[i64] {
        &self.rhs
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        self.rays.iter().zip(&self.rhs).all(|(v, a)| dot(v, m) + a >= 0)
    }

    /// Exponent vector `phi(m) + a` of the Cox monomial attached to `m`.
    pub fn cox_exponents(&self, m: &[i64]) -> Vec<i64> {
        self.rays.iter().zip(&self.rhs).map(|(v, a)| dot(v, m) + a).collect()
    }

    pub fn dilate(&self, k: i64) -> Self {
        Self { rays: self.rays.clone(), rhs: self.rhs.iter().map(|a| a * k).collect() }
    }

    /// Exact vertex set, sorted.
    pub fn vertices(&self) -> Vec<Vec<BigRat>> {
        let n = self.dim();
        let r = self.rays.len();
        let mut found = BTreeSet::new();
        for subset in combinations(r, n) {
            let a: Vec<Vec<BigRat>> = subset.iter().map(|&j| self.rays[j].iter().map(|&x| rat(x)).collect()).collect();
            let b: Vec<BigRat> = subset.iter().map(|&j| rat(-self.rhs[j])).collect();
            let Ok(x) = exactlin::solve_rational(&a, &b) else { continue };
            let feasible = self.rays.iter().zip(&self.rhs).all(|(v, &aj)| {
                let s: BigRat = v.iter().zip(&x).map(|(&vi, xi)| xi * rat(vi)).sum();
                s + rat(aj) >= BigRat::zero()
            });
            if feasible {
                found.insert(x);
            }
        }
        found.into_iter().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices().is_empty()
    }

    /// Integer points, lexicographically sorted.
    pub fn lattice_points(&self) -> LatticePointSet {
        let verts = self.vertices();
        if verts.is_empty() {
            return LatticePointSet::default();
        }
        let n = self.dim();
        let bounds: Vec<(i64, i64)> = (0..n)
            .map(|i| {
                let lo = verts.iter().map(|v| v[i].floor()).min().expect("nonempty");
                let hi = verts.iter().map(|v| v[i].ceil()).max().expect("nonempty");
                (to_i64(lo.to_integer()), to_i64(hi.to_integer()))
            })
            .collect();
        let mut points = Vec::new();
        let mut cur: Vec<i64> = bounds.iter().map(|b| b.0).collect();
        loop {
            if self.contains(&cur) {
                points.push(cur.clone());
            }
            // Odometer with the last coordinate fastest keeps lex order.
            let mut i = n;
            loop {
                if i == 0 {
                    return LatticePointSet { points };
                }
                i -= 1;
                if cur[i] < bounds[i].1 {
                    cur[i] += 1;
                    break;
                }
                cur[i] = bounds[i].0;
            }
        }
    }

    pub fn count_lattice_points(&self) -> u64 {
        self.lattice_points().len() as u64
    }

    pub fn is_lattice_polytope(&self) -> bool {
        self.vertices().iter().all(|v| v.iter().all(BigRat::is_integer))
    }

    /// `n! Vol_n(P)` as the n-th forward difference of `k -> |kP ∩ M|`.
    pub fn normalized_volume(&self) -> Result<BigInt, PolytopeError> {
        let ehr = self.ehrhart_polynomial()?;
        Ok(ehr.normalized_leading())
    }

    /// Interpolates the Ehrhart polynomial from the dilates `0..=n`.
    pub fn ehrhart_polynomial(&self) -> Result<EhrhartPolynomial, PolytopeError> {
        if let Some(v) = self.vertices().into_iter().find(|v| !v.iter().all(BigRat::is_integer)) {
            let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            return Err(PolytopeError::NotLatticePolytope(format!("({})", s.join(","))));
        }
        let n = self.dim();
        let values: Vec<BigInt> = (0..=n as i64)
            .map(|k| {
                if self.is_empty() {
                    BigInt::zero()
                } else {
                    BigInt::from(self.dilate(k).count_lattice_points())
                }
            })
            .collect();
        Ok(EhrhartPolynomial::from_values(values))
    }
}

/// Ehrhart polynomial kept in the binomial (Newton forward-difference) basis:
/// `L(k) = sum_i d_i * C(k, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    differences: Vec<BigInt>,
}

impl EhrhartPolynomial {
    fn from_values(mut values: Vec<BigInt>) -> Self {
        let mut differences = Vec::with_capacity(values.len());
        while !values.is_empty() {
            differences.push(values[0].clone());
            values = values.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        Self { differences }
    }

    pub fn degree_bound(&self) -> usize {
        self.differences.len().saturating_sub(1)
    }

    pub fn evaluate(&self, k: i64) -> BigInt {
        let mut binom = BigInt::from(1);
        let mut total = BigInt::zero();
        for (i, d) in self.differences.iter().enumerate() {
            total += d * &binom;
            binom = binom * BigInt::from(k - i as i64) / BigInt::from(i as i64 + 1);
        }
        total
    }

    /// Coefficients of `k^0, k^1, ...`.
    pub fn coefficients(&self) -> Vec<BigRat> {
        let n = self.differences.len();
        let mut coeffs = vec![BigRat::zero(); n];
        // C(k, i) = k (k-1) ... (k-i+1) / i!
        let mut falling: Vec<BigRat> = vec![rat(1)];
        let mut fact = BigInt::from(1);
        for (i, d) in self.differences.iter().enumerate() {
            if i > 0 {
                fact *= BigInt::from(i as i64);
            }
            for (deg, c) in falling.iter().enumerate() {
                coeffs[deg] += c * BigRat::new(d.clone(), fact.clone());
            }
            let shift = rat(-(i as i64));
            let mut next = vec![BigRat::zero(); falling.len() + 1];
            for (deg, c) in falling.iter().enumerate() {
                next[deg + 1] += c.clone();
                next[deg] += c * &shift;
            }
            falling = next;
        }
        coeffs
    }

    /// `n!` times the coefficient of `k^n`.
    pub fn normalized_leading(&self) -> BigInt {
        self.differences.last().cloned().unwrap_or_default()
    }
}

fn to_i64(x: BigInt) -> i64 {
    x.to_i64().expect("lattice coordinate fits in i64")
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Polytope for `alpha` using the Hermite-normal-form preimage as the
/// representative divisor.
pub fn polytope_of_degree(x: &ToricVariety, alpha: &DegreeClass) -> HPolytope {
    let rep = representative(x, alpha);
    HPolytope::new(x.ray_rows().to_vec(), rep)
}

/// A Cox exponent vector of degree `alpha`.
pub fn representative(x: &ToricVariety, alpha: &DegreeClass) -> Vec<i64> {
    let target = exactlin::to_bigints(alpha.coords());
    let a = exactlin::integer_preimage(x.grading(), &target)
        .expect("validated gradings are surjective");
    a.into_iter().map(to_i64).collect()
}

pub fn count_lattice_points(x: &ToricVariety, alpha: &DegreeClass) -> u64 {
    polytope_of_degree(x, alpha).count_lattice_points()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h2() -> ToricVariety {
        ToricVariety::new(
            &[vec![1, 0], vec![0, 1], vec![-1, 2], vec![0, -1]],
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
            Some(&[vec![1, -2, 1, 0], vec![0, 1, 0, 1]]),
        )
        .unwrap()
    }

    fn ivec(v: &[i64]) -> Vec<BigRat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    /// Oracle: number of monomials of degree (a, b) in Cox coordinates of
    /// H_2, i.e. solutions of i + k - 2j = a, j + l = b in nonnegative
    /// integers.
    fn h2_monomial_count(a: i64, b: i64) -> u64 {
        if b < 0 {
            return 0;
        }
        (0..=b).map(|j| (a + 2 * j + 1).max(0) as u64).sum()
    }

    #[test]
    fn segment_and_triangle() {
        let p = HPolytope::new(h2().ray_rows().to_vec(), vec![2, 0, 0, 0]);
        assert_eq!(p.vertices(), vec![ivec(&[-2, 0]), ivec(&[0, 0])]);
        let t = HPolytope::new(h2().ray_rows().to_vec(), vec![0, 0, 0, 4]);
        assert_eq!(t.vertices(), vec![ivec(&[0, 0]), ivec(&[0, 4]), ivec(&[8, 4])]);
        assert_eq!(t.normalized_volume().unwrap(), BigInt::from(32));
        assert_eq!(p.normalized_volume().unwrap(), BigInt::from(0));
    }

    #[test]
    fn empty_and_zero_classes() {
        let x = h2();
        let empty = polytope_of_degree(&x, &DegreeClass::from([-1, 0]));
        assert!(empty.vertices().is_empty());
        assert_eq!(count_lattice_points(&x, &DegreeClass::from([-1, 0])), 0);
        assert_eq!(count_lattice_points(&x, &DegreeClass::from([0, 0])), 1);
        assert_eq!(count_lattice_points(&x, &DegreeClass::from([1, 1])), 6);
    }

    #[test]
    fn counts_match_monomial_oracle() {
        let x = h2();
        for a in -8..=8 {
            for b in -1..=4 {
                assert_eq!(count_lattice_points(&x, &DegreeClass::from([a, b])), h2_monomial_count(a, b), "({a},{b})");
            }
        }
    }

    #[test]
    fn unit_simplex_volume() {
        for n in 1..=4usize {
            // x_i >= 0 and sum x_i <= 1
            let mut rays: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
            rays.push(vec![-1; n]);
            let mut rhs = vec![0; n];
            rhs.push(1);
            let p = HPolytope::new(rays, rhs);
            assert_eq!(p.normalized_volume().unwrap(), BigInt::from(1));
        }
    }

    #[test]
    fn non_lattice_rejected() {
        // 0 <= 2x <= 1 style: segment [0, 1/2] from -x >= -1/2 is not expressible
        // with integer rhs, so use P(1,2,3) at degree 1.
        let x = ToricVariety::new(
            &[vec![-2, -3], vec![1, 0], vec![0, 1]],
            &[vec![0, 1], vec![1, 2], vec![0, 2]],
            Some(&[vec![1, 2, 3]]),
        )
        .unwrap();
        let p = polytope_of_degree(&x, &DegreeClass::from([1]));
        assert!(matches!(p.normalized_volume(), Err(PolytopeError::NotLatticePolytope(_))));
    }

    #[test]
    fn ehrhart_polynomial_of_triangle() {
        let t = HPolytope::new(h2().ray_rows().to_vec(), vec![0, 0, 0, 4]);
        let e = t.ehrhart_polynomial().unwrap();
        // Area 16, boundary 16 lattice points: L(k) = 16k^2 + 8k + 1.
        assert_eq!(e.coefficients(), ivec(&[1, 8, 16]));
        for k in 0..6 {
            assert_eq!(e.evaluate(k), BigInt::from(t.dilate(k).count_lattice_points()));
        }
    }

    #[test]
    fn lattice_points_sorted_and_inside() {
        let p = polytope_of_degree(&h2(), &DegreeClass::from([3, 2]));
        let pts = p.lattice_points();
        assert!(pts.points.windows(2).all(|w| w[0] < w[1]));
        assert!(pts.iter().all(|m| p.contains(m)));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 3).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}
