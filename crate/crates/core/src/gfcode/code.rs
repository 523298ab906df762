//! Evaluation matrices, rank, minimum distance and shift equivalence.

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{checked_power, CodeError, PointSet, PrimeField};
use crate::exactlin::{self, to_bigints};
use crate::polytope::{self, LatticePointSet};
use crate::toricfan::{DegreeClass, ToricVariety};

/// Dense matrix over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfMatrix {
    pub field: PrimeField,
    pub rows: Vec<Vec<u64>>,
    pub ncols: usize,
}

impl GfMatrix {
    pub fn new(field: PrimeField, rows: Vec<Vec<u64>>, ncols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        Self { field, rows, ncols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Reduced row echelon form of the nonzero part; one row per unit of rank.
    pub fn row_reduced(&self) -> Vec<Vec<u64>> {
        let f = &self.field;
        let mut m = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.ncols {
            let Some(p) = (rank..m.len()).find(|&i| m[i][col] != 0) else { continue };
            m.swap(rank, p);
            let inv = f.inv(m[rank][col]);
            for x in m[rank].iter_mut() {
                *x = f.mul(*x, inv);
            }
            let pivot_row = m[rank].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == rank || row[col] == 0 {
                    continue;
                }
                let c = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        m.truncate(rank);
        m
    }

    pub fn rank(&self) -> usize {
        self.row_reduced().len()
    }

    /// Indices of rows that are independent of the rows before them.
    pub fn independent_rows(&self) -> Vec<usize> {
        let f = &self.field;
        let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut chosen = Vec::new();
        for (idx, row) in self.rows.iter().enumerate() {
            let mut r = row.clone();
            for (pc, b) in &basis {
                if r[*pc] != 0 {
                    let c = r[*pc];
                    for (x, &y) in r.iter_mut().zip(b) {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
            if let Some(pc) = r.iter().position(|&x| x != 0) {
                let inv = f.inv(r[pc]);
                r.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                basis.push((pc, r));
                chosen.push(idx);
            }
        }
        chosen
    }

    pub fn scale_columns(&self, scale: &[u64]) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().zip(scale).map(|(&x, &s)| self.field.mul(x, s)).collect())
            .collect();
        Self::new(self.field, rows, self.ncols)
    }

    /// Rows as space-separated integers, one line each.
    pub fn render(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// `C_{alpha,Y}`: lattice points of `P_alpha` evaluated at torus points after
/// dividing by the pivot monomial.
#[derive(Debug)]
pub struct EvalCode {
    pub field: PrimeField,
    pub alpha: DegreeClass,
    /// Cox representative `a` of `alpha` used to build the polytope.
    pub representative: Vec<i64>,
    pub pivot: Vec<i64>,
    pub monomials: LatticePointSet,
    pub points: PointSet,
    pub matrix: GfMatrix,
    dimension: OnceLock<usize>,
}

impl EvalCode {
    pub fn length(&self) -> usize {
        self.points.len()
    }

    /// Lattice points whose rows form a basis of the row space, chosen
    /// greedily in lexicographic order.
    pub fn basis_monomials(&self) -> Vec<Vec<i64>> {
        self.matrix.independent_rows().into_iter().map(|i| self.monomials.points[i].clone()).collect()
    }
}

/// `[N, k, d]_q`; `d` is `None` when it was not computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParameters {
    pub length: usize,
    pub dimension: usize,
    pub min_distance: Option<u64>,
    pub q: u64,
}

impl fmt::Display for CodeParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.min_distance {
            Some(d) => write!(f, "[{}, {}, {}]_{}", self.length, self.dimension, d, self.q),
            None => write!(f, "[{}, {}, ?]_{}", self.length, self.dimension, self.q),
        }
    }
}

/// Builds the evaluation matrix of degree `alpha` at `points`. The pivot
/// defaults to the lexicographically smallest lattice point.
pub fn evaluation_matrix(
    x: &ToricVariety,
    alpha: &DegreeClass,
    points: &PointSet,
    field: &PrimeField,
    pivot: Option<&[i64]>,
) -> Result<EvalCode, CodeError> {
    if points.is_empty() {
        return Err(CodeError::BadInput("no evaluation points".into()));
    }
    if points.dim() != x.dim() {
        return Err(CodeError::BadInput(format!("points have dimension {}, variety {}", points.dim(), x.dim())));
    }
    let poly = polytope::polytope_of_degree(x, alpha);
    let monomials = poly.lattice_points();
    if monomials.is_empty() {
        return Err(CodeError::EmptySection(alpha.to_string()));
    }
    let pivot = match pivot {
        Some(p) if monomials.contains(p) => p.to_vec(),
        Some(p) => return Err(CodeError::PivotOutside(p.to_vec())),
        None => monomials.points[0].clone(),
    };
    let rows: Vec<Vec<u64>> = monomials
        .iter()
        .map(|m| {
            let e: Vec<i64> = m.iter().zip(&pivot).map(|(a, b)| a - b).collect();
            points.points().iter().map(|t| field.monomial(t, &e)).collect()
        })
        .collect();
    Ok(EvalCode {
        field: *field,
        alpha: alpha.clone(),
        representative: poly.representative().to_vec(),
        pivot,
        monomials,
        matrix: GfMatrix::new(*field, rows, points.len()),
        points: points.clone(),
        dimension: OnceLock::new(),
    })
}

/// Rank of the evaluation matrix.
pub fn code_dimension(code: &EvalCode) -> usize {
    *code.dimension.get_or_init(|| code.matrix.rank())
}

/// Minimum Hamming weight over all nonzero codewords. Messages are enumerated
/// up to scalar multiples, which does not change weights.
pub fn min_distance(code: &EvalCode, budget: u64) -> Result<u64, CodeError> {
    let generator = code.matrix.row_reduced();
    min_distance_of_generator(&code.field, &generator, budget)
}

pub(crate) fn min_distance_of_generator(field: &PrimeField, gen: &[Vec<u64>], budget: u64) -> Result<u64, CodeError> {
    let k = gen.len();
    if k == 0 {
        return Err(CodeError::ZeroCode);
    }
    let q = field.order();
    checked_power(q, k as u64, budget, "codeword enumeration")?;
    let best = (0..k)
        .map(|lead| {
            let tail = k - 1 - lead;
            let count = q.pow(tail as u32);
            (0..count)
                .into_par_iter()
                .map(|mut idx| {
                    let mut word = gen[lead].clone();
                    for row in &gen[lead + 1..] {
                        let c = idx % q;
                        idx /= q;
                        if c != 0 {
                            for (w, &g) in word.iter_mut().zip(row) {
                                *w = field.add(*w, field.mul(c, g));
                            }
                        }
                    }
                    word.iter().filter(|&&w| w != 0).count() as u64
                })
                .min()
                .expect("at least one message")
        })
        .min()
        .expect("k >= 1");
    Ok(best)
}

/// Whether `code_to` equals `code_from` with columns scaled by `shift`.
pub fn shift_equivalence_check(code_from: &EvalCode, code_to: &EvalCode, shift: &[u64]) -> Result<bool, CodeError> {
    let (ka, kb) = (code_dimension(code_from), code_dimension(code_to));
    if ka != kb {
        return Err(CodeError::DimensionMismatch(ka, kb));
    }
    if code_from.length() != code_to.length() || shift.len() != code_from.length() {
        return Err(CodeError::BadInput("codes and shift must share the same points".into()));
    }
    let scaled = code_from.matrix.scale_columns(shift);
    if scaled.rank() != kb {
        return Ok(false);
    }
    let mut stacked = scaled.rows;
    stacked.extend(code_to.matrix.rows.iter().cloned());
    Ok(GfMatrix::new(code_from.field, stacked, code_from.length()).rank() == kb)
}

/// Column scaling that carries `code_from` onto `code_to` through
/// multiplication by the Cox monomial `x^shift_exponents`.
pub fn monomial_shift_values(
    x: &ToricVariety,
    code_from: &EvalCode,
    code_to: &EvalCode,
    shift_exponents: &[i64],
) -> Result<Vec<u64>, CodeError> {
    if shift_exponents.len() != x.num_rays() {
        return Err(CodeError::BadInput("shift monomial needs one exponent per ray".into()));
    }
    if &(&code_from.alpha + &x.degree_of(shift_exponents)) != &code_to.alpha {
        return Err(CodeError::BadInput("shift monomial has the wrong degree".into()));
    }
    // phi(w) = a + a0 - b relates the two polytopes' lattice points.
    let diff: Vec<i64> = code_from
        .representative
        .iter()
        .zip(shift_exponents)
        .zip(&code_to.representative)
        .map(|((a, a0), b)| a + a0 - b)
        .collect();
    let w = exactlin::solve_integer(x.rays(), &to_bigints(&diff))
        .map_err(|_| CodeError::BadInput("representatives are not compatible".into()))?;
    let exponent: Vec<i64> = w
        .iter()
        .zip(code_from.pivot.iter().zip(&code_to.pivot))
        .map(|(wi, (p0, p1))| i64::try_from(wi).expect("small lattice vector") + p0 - p1)
        .collect();
    Ok(code_from.points.points().iter().map(|t| code_from.field.monomial(t, &exponent)).collect())
}

/// Evaluates Cox monomials directly at Cox points. Row `i`, column `j` is
/// `prod_k point_j[k]^{exponents_i[k]}`.
pub fn evaluate_cox_monomials(exponents: &[Vec<i64>], cox_points: &[Vec<u64>], field: &PrimeField) -> GfMatrix {
    let rows = exponents
        .iter()
        .map(|e| cox_points.iter().map(|p| field.monomial(p, e)).collect())
        .collect();
    GfMatrix::new(*field, rows, cox_points.len())
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

    fn hirci_points(f5: &PrimeField) -> PointSet {
        let pts = [1u64, 4].iter().flat_map(|&a| (1..=4).map(move |b| vec![a, b])).collect();
        PointSet::new(f5, pts).unwrap()
    }

    fn dc(v: &[i64]) -> DegreeClass {
        DegreeClass(v.to_vec())
    }

    /// Oracle for min distance: every nonzero message, no projective trick.
    fn brute_min_distance(field: &PrimeField, gen: &[Vec<u64>]) -> u64 {
        let q = field.order();
        let k = gen.len();
        let n = gen[0].len();
        (1..q.pow(k as u32))
            .map(|mut idx| {
                let mut word = vec![0; n];
                for row in gen {
                    let c = idx % q;
                    idx /= q;
                    for (w, &g) in word.iter_mut().zip(row) {
                        *w = field.add(*w, field.mul(c, g));
                    }
                }
                word.iter().filter(|&&w| w != 0).count() as u64
            })
            .min()
            .unwrap()
    }

    #[test]
    fn hirci_parameters() {
        let f5 = PrimeField::new(5).unwrap();
        let x = h2();
        let y = hirci_points(&f5);
        for (alpha, k, d) in [([1, 1], 4, 3), ([0, 2], 5, 3), ([1, 2], 6, 2), ([0, 3], 7, 2), ([1, 3], 8, 1)] {
            let code = evaluation_matrix(&x, &dc(&alpha), &y, &f5, None).unwrap();
            assert_eq!(code_dimension(&code), k, "{alpha:?}");
            assert_eq!(min_distance(&code, 10_000_000).unwrap(), d, "{alpha:?}");
            let g = code.matrix.row_reduced();
            assert_eq!(brute_min_distance(&f5, &g), d);
        }
    }

    #[test]
    fn single_point_trivial_degree() {
        let f5 = PrimeField::new(5).unwrap();
        let y = PointSet::new(&f5, vec![vec![2, 3]]).unwrap();
        let code = evaluation_matrix(&h2(), &dc(&[0, 0]), &y, &f5, None).unwrap();
        assert_eq!(code.matrix.rows, vec![vec![1]]);
    }

    #[test]
    fn empty_section_and_zero_code() {
        let f5 = PrimeField::new(5).unwrap();
        let y = hirci_points(&f5);
        assert!(matches!(
            evaluation_matrix(&h2(), &dc(&[-1, 0]), &y, &f5, None),
            Err(CodeError::EmptySection(_))
        ));
        assert_eq!(min_distance_of_generator(&f5, &[], 100), Err(CodeError::ZeroCode));
    }

    #[test]
    fn budget_on_codewords() {
        let f5 = PrimeField::new(5).unwrap();
        let code = evaluation_matrix(&h2(), &dc(&[1, 1]), &hirci_points(&f5), &f5, None).unwrap();
        assert!(matches!(min_distance(&code, 624), Err(CodeError::BudgetExceeded { .. })));
        assert_eq!(min_distance(&code, 625).unwrap(), 3);
    }

    #[test]
    fn shift_equivalence() {
        let f5 = PrimeField::new(5).unwrap();
        let x = h2();
        let y = hirci_points(&f5);
        let c13 = evaluation_matrix(&x, &dc(&[1, 3]), &y, &f5, None).unwrap();
        let c23 = evaluation_matrix(&x, &dc(&[2, 3]), &y, &f5, None).unwrap();
        let s = monomial_shift_values(&x, &c13, &c23, &[1, 0, 0, 0]).unwrap();
        assert!(shift_equivalence_check(&c13, &c23, &s).unwrap());

        let ident = vec![1; 8];
        assert!(shift_equivalence_check(&c13, &c13, &ident).unwrap());

        let c02 = evaluation_matrix(&x, &dc(&[0, 2]), &y, &f5, None).unwrap();
        let c12 = evaluation_matrix(&x, &dc(&[1, 2]), &y, &f5, None).unwrap();
        assert_eq!(shift_equivalence_check(&c02, &c12, &ident), Err(CodeError::DimensionMismatch(5, 6)));

        // H(1,2) = H(2,2) = 6 < 8: the shift by x is an equivalence, a random
        // rescaling generally is not.
        let c22 = evaluation_matrix(&x, &dc(&[2, 2]), &y, &f5, None).unwrap();
        let s = monomial_shift_values(&x, &c12, &c22, &[1, 0, 0, 0]).unwrap();
        assert!(shift_equivalence_check(&c12, &c22, &s).unwrap());
        assert!(!shift_equivalence_check(&c12, &c22, &[1, 2, 3, 4, 1, 1, 1, 1]).unwrap());
    }

    #[test]
    fn pivot_choice_scales_columns() {
        let f5 = PrimeField::new(5).unwrap();
        let x = h2();
        let y = hirci_points(&f5);
        let a = evaluation_matrix(&x, &dc(&[1, 1]), &y, &f5, None).unwrap();
        let last = a.monomials.points.last().unwrap().clone();
        let b = evaluation_matrix(&x, &dc(&[1, 1]), &y, &f5, Some(&last)).unwrap();
        assert_eq!(code_dimension(&a), code_dimension(&b));
        assert_eq!(min_distance(&a, 1 << 20).unwrap(), min_distance(&b, 1 << 20).unwrap());
        assert!(matches!(
            evaluation_matrix(&x, &dc(&[1, 1]), &y, &f5, Some(&[50, 50])),
            Err(CodeError::PivotOutside(_))
        ));
    }

    #[test]
    fn basis_monomials_span() {
        let f5 = PrimeField::new(5).unwrap();
        let code = evaluation_matrix(&h2(), &dc(&[1, 1]), &hirci_points(&f5), &f5, None).unwrap();
        assert_eq!(code.basis_monomials().len(), 4);
    }
}
