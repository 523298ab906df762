//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers and rationals.
//! The matrices that show up in toric computations are tiny (a dozen rows at
//! most), so the algorithms are the textbook pivot-and-reduce ones.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Reduced fraction with positive denominator.
pub type BigRat = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("singular system")]
    Singular,
    #[error("target vector is not in the image lattice")]
    NoPreimage,
}

/// Dense integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LinAlgError> {
        if rows * cols != entries.len() {
            return Err(LinAlgError::Shape(format!(
                "{rows}x{cols} matrix given {} entries",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from `i64` rows. All rows must have the same length;
    /// an empty slice gives a `0 x cols` matrix only through [`IntMatrix::zeros`].
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, LinAlgError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(LinAlgError::Shape(format!(
                    "row {i} has length {} but row 0 has length {cols}",
                    row.len()
                )));
            }
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        Ok(Self { rows: rows.len(), cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Converts to `i64` rows, failing if any entry does not fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(i64::try_from).collect::<Result<Vec<_>, _>>().ok())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Determinant of a square matrix, by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> Result<BigInt, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * factor;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * factor;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Replaces columns (a, b) by (a*p + b*q, a*r + b*s).
    fn combine_cols(&mut self, a: usize, b: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) {
        for i in 0..self.rows {
            let x = self[(i, a)].clone();
            let y = self[(i, b)].clone();
            self[(i, a)] = &x * p + &y * q;
            self[(i, b)] = &x * r + &y * s;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// `u * a * v == d` with `d` diagonal and its nonzero entries forming a
/// divisibility chain.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form by repeated smallest-pivot reduction.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        // Smallest nonzero |entry| in the trailing block.
        let pivot = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !d[(i, j)].is_zero())
            .min_by(|&p, &q| d[p].abs().cmp(&d[q].abs()));
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                let f = -q;
                d.add_row_multiple(i, t, &f);
                u.add_row_multiple(i, t, &f);
                if !d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                let f = -q;
                d.add_col_multiple(j, t, &f);
                v.add_col_multiple(j, t, &f);
                if !d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // Remainders left over: move the smallest one into the pivot.
                let cand = (t..m)
                    .map(|i| (i, t))
                    .chain((t..n).map(|j| (t, j)))
                    .filter(|&p| !d[p].is_zero())
                    .min_by(|&p, &q| d[p].abs().cmp(&d[q].abs()))
                    .expect("pivot row/column is nonzero");
                if cand.0 != t {
                    d.swap_rows(t, cand.0);
                    u.swap_rows(t, cand.0);
                } else if cand.1 != t {
                    d.swap_cols(t, cand.1);
                    v.swap_cols(t, cand.1);
                }
                continue;
            }
            // Row and column are clear; enforce divisibility of the trailing block.
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&p| !d[p].is_multiple_of(&d[(t, t)]));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { u, d, v }
}

/// Column-style Hermite normal form: `a * v == h` with `v` unimodular and `h`
/// lower echelon. Returns `(h, v, pivot_cols)`, one pivot column per nonzero row
/// of the echelon shape.
pub fn column_hermite_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, Vec<Option<usize>>) {
    let (m, n) = (a.rows, a.cols);
    let mut h = a.clone();
    let mut v = IntMatrix::identity(n);
    let mut pivots = Vec::with_capacity(m);
    let mut pc = 0;
    for i in 0..m {
        if pc >= n {
            pivots.push(None);
            continue;
        }
        // Fold every later entry of row i into column pc via extended gcd.
        for j in pc + 1..n {
            if h[(i, j)].is_zero() {
                continue;
            }
            let x = h[(i, pc)].clone();
            let y = h[(i, j)].clone();
            let e = x.extended_gcd(&y);
            let g = e.gcd;
            // [pc, j] <- [pc*s + j*t, -pc*(y/g) + j*(x/g)]
            let (p, q) = (e.x, e.y);
            let r = -(&y / &g);
            let s = &x / &g;
            h.combine_cols(pc, j, &p, &q, &r, &s);
            v.combine_cols(pc, j, &p, &q, &r, &s);
        }
        if h[(i, pc)].is_zero() {
            pivots.push(None);
            continue;
        }
        if h[(i, pc)].is_negative() {
            h.negate_col(pc);
            v.negate_col(pc);
        }
        // Reduce entries left of the pivot into [0, pivot).
        for j in 0..pc {
            let q = h[(i, j)].div_floor(&h[(i, pc)]);
            let f = -q;
            h.add_col_multiple(j, pc, &f);
            v.add_col_multiple(j, pc, &f);
        }
        pivots.push(Some(pc));
        pc += 1;
    }
    (h, v, pivots)
}

/// Some integer `x` with `grading * x == target`, found by Hermite
/// back-substitution.
pub fn integer_preimage(grading: &IntMatrix, target: &[BigInt]) -> Result<Vec<BigInt>, LinAlgError> {
    if target.len() != grading.rows {
        return Err(LinAlgError::Shape(format!(
            "target of length {} for {} rows",
            target.len(),
            grading.rows
        )));
    }
    let (h, v, pivots) = column_hermite_form(grading);
    let mut y = vec![BigInt::zero(); grading.cols];
    for (i, piv) in pivots.iter().enumerate() {
        let partial: BigInt = match piv {
            Some(pc) => (0..*pc).map(|j| &h[(i, j)] * &y[j]).sum(),
            None => (0..grading.cols).map(|j| &h[(i, j)] * &y[j]).sum(),
        };
        let rest = &target[i] - partial;
        match piv {
            Some(pc) => {
                let (q, r) = rest.div_rem(&h[(i, *pc)]);
                if !r.is_zero() {
                    return Err(LinAlgError::NoPreimage);
                }
                y[*pc] = q;
            }
            None if !rest.is_zero() => return Err(LinAlgError::NoPreimage),
            None => {}
        }
    }
    v.mul_vec(&y)
}

/// Some integer `x` with `a * x == b`, via the Smith form of `a`.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Vec<BigInt>, LinAlgError> {
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b)?;
    let mut z = vec![BigInt::zero(); a.cols];
    for (i, ubi) in ub.iter().enumerate() {
        let d = if i < a.cols { snf.d[(i, i)].clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !ubi.is_zero() {
                return Err(LinAlgError::NoPreimage);
            }
            continue;
        }
        let (q, r) = ubi.div_rem(&d);
        if !r.is_zero() {
            return Err(LinAlgError::NoPreimage);
        }
        z[i] = q;
    }
    snf.v.mul_vec(&z)
}

/// Exact Gaussian elimination for a square system.
pub fn solve_rational(a: &[Vec<BigRat>], b: &[BigRat]) -> Result<Vec<BigRat>, LinAlgError> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(LinAlgError::Shape("solve_rational needs a square system".into()));
    }
    let mut m: Vec<Vec<BigRat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !m[i][col].is_zero()).ok_or(LinAlgError::Singular)?;
        m.swap(col, p);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i == col || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for j in col..=n {
                let sub = &f * &m[col][j];
                m[i][j] -= sub;
            }
        }
    }
    Ok(m.into_iter().map(|mut row| row.pop().expect("augmented column")).collect())
}

/// Convenience: integers to rationals.
pub fn rat(x: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(x))
}

pub fn to_bigints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn check_snf(a: &IntMatrix) -> SnfResult {
        let snf = smith_normal_form(a);
        assert_eq!(snf.u.mul(a).unwrap().mul(&snf.v).unwrap(), snf.d);
        assert!(snf.u.determinant().unwrap().abs().is_one());
        assert!(snf.v.determinant().unwrap().abs().is_one());
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert!(snf.d[(i, j)].is_zero());
                }
            }
        }
        let f = snf.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]), "{f:?}");
        }
        assert!(f.iter().all(|x| x.is_positive()));
        snf
    }

    #[test]
    fn snf_identity() {
        let snf = check_snf(&IntMatrix::identity(2));
        assert_eq!(snf.d, IntMatrix::identity(2));
        assert_eq!(snf.u, IntMatrix::identity(2));
        assert_eq!(snf.v, IntMatrix::identity(2));
    }

    #[test]
    fn snf_hirzebruch_rays_torsion_free() {
        let a = m(&[&[1, 0], &[0, 1], &[-1, 2], &[0, -1]]);
        let snf = check_snf(&a);
        assert_eq!(snf.invariant_factors(), vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn snf_diag_2_3() {
        let snf = check_snf(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(snf.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn snf_rank_deficient() {
        let snf = check_snf(&m(&[&[2, 4, 6], &[1, 2, 3]]));
        assert_eq!(snf.rank(), 1);
    }

    #[test]
    fn preimage_examples() {
        let h2 = m(&[&[1, -2, 1, 0], &[0, 1, 0, 1]]);
        for target in [[1i64, 0], [0, 4], [-2, 7], [5, -3]] {
            let t = to_bigints(&target);
            let a = integer_preimage(&h2, &t).unwrap();
            assert_eq!(h2.mul_vec(&a).unwrap(), t);
        }
        let p123 = m(&[&[1, 2, 3]]);
        let a = integer_preimage(&p123, &to_bigints(&[6])).unwrap();
        assert_eq!(p123.mul_vec(&a).unwrap(), to_bigints(&[6]));
    }

    #[test]
    fn preimage_outside_image_lattice() {
        let g = m(&[&[2, 4]]);
        assert_eq!(integer_preimage(&g, &to_bigints(&[3])), Err(LinAlgError::NoPreimage));
        assert_eq!(solve_integer(&g, &to_bigints(&[3])), Err(LinAlgError::NoPreimage));
    }

    #[test]
    fn rational_solves() {
        let id = vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]];
        let b = vec![BigRat::new(3.into(), 7.into()), rat(-5)];
        assert_eq!(solve_rational(&id, &b).unwrap(), b);

        let a = vec![vec![rat(1), rat(0)], vec![rat(-1), rat(2)]];
        assert_eq!(solve_rational(&a, &[rat(-2), rat(0)]).unwrap(), vec![rat(-2), rat(-1)]);

        let s = vec![vec![rat(1), rat(0)], vec![rat(2), rat(0)]];
        assert_eq!(solve_rational(&s, &[rat(1), rat(2)]), Err(LinAlgError::Singular));
    }

    #[test]
    fn determinant_matches_cofactor() {
        assert_eq!(m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]).determinant().unwrap(), BigInt::from(18));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant().unwrap(), BigInt::from(-1));
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..10, r * c).prop_map(move |e| {
                IntMatrix::new(r, c, e.into_iter().map(BigInt::from).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn snf_reconstructs(a in small_matrix()) {
            check_snf(&a);
        }

        #[test]
        fn preimage_maps_back(a in small_matrix(), x in proptest::collection::vec(-5i64..6, 4)) {
            let x: Vec<BigInt> = x.into_iter().take(a.cols()).chain(std::iter::repeat(0)).take(a.cols()).map(BigInt::from).collect();
            let b = a.mul_vec(&x).unwrap();
            let y = integer_preimage(&a, &b).unwrap();
            prop_assert_eq!(a.mul_vec(&y).unwrap(), b.clone());
            let z = solve_integer(&a, &b).unwrap();
            prop_assert_eq!(a.mul_vec(&z).unwrap(), b);
        }

        #[test]
        fn rational_solution_checks(e in proptest::collection::vec(-6i64..7, 9), b in proptest::collection::vec(-6i64..7, 3)) {
            let a: Vec<Vec<BigRat>> = e.chunks(3).map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
            let b: Vec<BigRat> = b.into_iter().map(rat).collect();
            if let Ok(x) = solve_rational(&a, &b) {
                for (row, bi) in a.iter().zip(&b) {
                    let lhs: BigRat = row.iter().zip(&x).map(|(p, q)| p * q).sum();
                    prop_assert_eq!(&lhs, bi);
                }
            }
        }
    }
}
