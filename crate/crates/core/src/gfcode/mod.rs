//! Evaluation codes over prime fields.
//!
//! Points of a zero-dimensional subscheme inside the torus `(F_q^*)^n` are
//! found by exhaustive search, and the monomials of a degree `alpha` (lattice
//! points of `P_alpha`) are evaluated at them to form a generator matrix.

pub mod code;
pub mod field;
pub mod laurent;

use thiserror::Error;

pub use code::{
    code_dimension, evaluate_cox_monomials, evaluation_matrix, min_distance, monomial_shift_values,
    shift_equivalence_check, CodeParameters, EvalCode, GfMatrix,
};
pub use field::{Gf, PrimeField};
pub use laurent::{find_torus_zeros, LaurentPoly, PointSet};

/// Default cap on `(q-1)^n` torus points and on `q^k` codewords.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("BudgetExceeded: {what} needs {needed} steps, budget is {budget}")]
    BudgetExceeded { what: &'static str, needed: String, budget: u64 },
    #[error("EmptySection: the polytope of {0} has no lattice points")]
    EmptySection(String),
    #[error("ZeroCode: the code has dimension 0")]
    ZeroCode,
    #[error("DimensionMismatch: dimensions {0} and {1} differ")]
    DimensionMismatch(usize, usize),
    #[error("pivot monomial {0:?} is not a lattice point of the polytope")]
    PivotOutside(Vec<i64>),
    #[error("malformed input: {0}")]
    BadInput(String),
}

/// `base^exp` if it stays within `budget`.
pub(crate) fn checked_power(base: u64, exp: u64, budget: u64, what: &'static str) -> Result<u64, CodeError> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc *= base as u128;
        if acc > budget as u128 {
            let needed = format!("{base}^{exp}");
            return Err(CodeError::BudgetExceeded { what, needed, budget });
        }
    }
    Ok(acc as u64)
}
