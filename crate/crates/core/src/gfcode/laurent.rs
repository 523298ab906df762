//! Laurent polynomial systems and their zeros in the torus.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{checked_power, CodeError, PrimeField};

/// Sparse Laurent polynomial over `F_q` in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    field: PrimeField,
    n: usize,
    /// exponent -> nonzero coefficient
    terms: BTreeMap<Vec<i64>, u64>,
}

impl LaurentPoly {
    /// Builds from `(coefficient, exponent)` pairs, merging repeated
    /// exponents and dropping zero coefficients.
    pub fn new(field: PrimeField, n: usize, terms: &[(i64, Vec<i64>)]) -> Result<Self, CodeError> {
        let mut map: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        for (c, e) in terms {
            if e.len() != n {
                return Err(CodeError::BadInput(format!("exponent {e:?} has length {} not {n}", e.len())));
            }
            let entry = map.entry(e.clone()).or_insert(0);
            *entry = field.add(*entry, field.from_i64(*c));
        }
        map.retain(|_, c| *c != 0);
        Ok(Self { field, n, terms: map })
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, u64)> {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at a point of the torus.
    pub fn eval(&self, point: &[u64]) -> u64 {
        self.terms
            .iter()
            .fold(0, |acc, (e, &c)| self.field.add(acc, self.field.mul(c, self.field.monomial(point, e))))
    }
}

/// Sorted, duplicate-free torus points with coordinates in `[1, q)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Vec<u64>>,
}

impl PointSet {
    pub fn new(field: &PrimeField, points: Vec<Vec<u64>>) -> Result<Self, CodeError> {
        let n = points.first().map_or(0, Vec::len);
        let mut pts = Vec::with_capacity(points.len());
        for p in points {
            if p.len() != n {
                return Err(CodeError::BadInput("torus points of differing dimension".into()));
            }
            let p: Vec<u64> = p.into_iter().map(|x| field.reduce(x)).collect();
            if p.contains(&0) {
                return Err(CodeError::BadInput(format!("point {p:?} is not in the torus")));
            }
            pts.push(p);
        }
        pts.sort();
        pts.dedup();
        Ok(Self { points: pts })
    }

    /// Keeps the caller's order. Used when a fixed column order matters.
    pub fn ordered(field: &PrimeField, points: Vec<Vec<u64>>) -> Result<Self, CodeError> {
        let sorted = Self::new(field, points.clone())?;
        if sorted.len() != points.len() {
            return Err(CodeError::BadInput("duplicate points".into()));
        }
        Ok(Self { points: points.into_iter().map(|p| p.into_iter().map(|x| field.reduce(x)).collect()).collect() })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<u64>] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }
}

/// All common zeros in `(F_q^*)^n`, by scanning every torus point.
pub fn find_torus_zeros(
    system: &[LaurentPoly],
    field: &PrimeField,
    n: usize,
    budget: u64,
) -> Result<PointSet, CodeError> {
    if let Some(p) = system.iter().find(|p| p.nvars() != n) {
        return Err(CodeError::BadInput(format!("polynomial in {} variables, expected {n}", p.nvars())));
    }
    let side = field.order() - 1;
    let total = checked_power(side, n as u64, budget, "torus scan")?;
    let decode = |mut idx: u64| -> Vec<u64> {
        let mut p = vec![0; n];
        for slot in p.iter_mut().rev() {
            *slot = idx % side + 1;
            idx /= side;
        }
        p
    };
    let points: Vec<Vec<u64>> = (0..total)
        .into_par_iter()
        .map(decode)
        .filter(|p| system.iter().all(|f| f.eval(p) == 0))
        .collect();
    // Decoding is lexicographic in the index, so the parallel collect is sorted.
    Ok(PointSet { points })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hirzebruch_system_over_f5() {
        let f5 = PrimeField::new(5).unwrap();
        let sys = vec![
            LaurentPoly::new(f5, 2, &[(1, vec![2, 0]), (-1, vec![0, 0])]).unwrap(),
            LaurentPoly::new(f5, 2, &[(1, vec![0, 4]), (-1, vec![0, 0])]).unwrap(),
        ];
        let y = find_torus_zeros(&sys, &f5, 2, 1000).unwrap();
        let expected: Vec<Vec<u64>> = [1, 4].iter().flat_map(|&a| (1..=4).map(move |b| vec![a, b])).collect();
        assert_eq!(y.points(), expected.as_slice());
    }

    #[test]
    fn empty_system_gives_whole_torus() {
        let f7 = PrimeField::new(7).unwrap();
        let y = find_torus_zeros(&[], &f7, 2, 1000).unwrap();
        assert_eq!(y.len(), 36);
        assert!(y.points().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn budget_enforced() {
        let f11 = PrimeField::new(11).unwrap();
        assert!(matches!(find_torus_zeros(&[], &f11, 3, 999), Err(CodeError::BudgetExceeded { .. })));
        assert_eq!(find_torus_zeros(&[], &f11, 3, 1000).unwrap().len(), 1000);
    }

    #[test]
    fn negative_exponents() {
        let f5 = PrimeField::new(5).unwrap();
        // t^-1 - 2  vanishes at t = 3
        let p = LaurentPoly::new(f5, 1, &[(1, vec![-1]), (-2, vec![0])]).unwrap();
        let y = find_torus_zeros(&[p], &f5, 1, 100).unwrap();
        assert_eq!(y.points(), &[vec![3]]);
    }

    #[test]
    fn merges_terms() {
        let f5 = PrimeField::new(5).unwrap();
        let p = LaurentPoly::new(f5, 1, &[(2, vec![1]), (3, vec![1])]).unwrap();
        assert!(p.is_zero());
    }
}
