#![allow(dead_code)]

pub mod props;

use std::path::PathBuf;

use rand::Rng;
use toricode::gfcode::{find_torus_zeros, LaurentPoly, PointSet, PrimeField};
use toricode::problem;
use toricode::{CiProblem, DegreeClass, ToricVariety};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn variety(name: &str) -> ToricVariety {
    problem::load_variety(&fixture(name)).expect("fixture variety")
}

pub fn dc(v: &[i64]) -> DegreeClass {
    DegreeClass(v.to_vec())
}

/// Hirzebruch surface `H_l`.
pub fn hirzebruch(l: i64) -> ToricVariety {
    ToricVariety::new(
        &[vec![1, 0], vec![0, 1], vec![-1, l], vec![0, -1]],
        &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        Some(&[vec![1, -l, 1, 0], vec![0, 1, 0, 1]]),
    )
    .unwrap()
}

pub fn ci(x: ToricVariety, degrees: &[&[i64]]) -> CiProblem {
    CiProblem::new(x, degrees.iter().map(|d| dc(d)).collect()).unwrap()
}

/// Counts Cox monomials of degree `alpha` directly: exponent vectors
/// `e >= 0` with `grading * e = alpha`, each entry at most `bound`.
pub fn count_monomials(x: &ToricVariety, alpha: &DegreeClass, bound: i64) -> u64 {
    fn go(x: &ToricVariety, alpha: &DegreeClass, e: &mut Vec<i64>, bound: i64) -> u64 {
        if e.len() == x.num_rays() {
            return u64::from(&x.degree_of(e) == alpha);
        }
        let mut total = 0;
        for v in 0..=bound {
            e.push(v);
            total += go(x, alpha, e, bound);
            e.pop();
        }
        total
    }
    go(x, alpha, &mut Vec::new(), bound)
}

/// `alpha` is a nonnegative integer combination of `gens`, each coefficient
/// at most `bound`.
pub fn in_semigroup(gens: &[DegreeClass], alpha: &DegreeClass, bound: i64) -> bool {
    fn go(gens: &[DegreeClass], rem: &DegreeClass, bound: i64) -> bool {
        if rem.is_zero() {
            return true;
        }
        let Some((g, rest)) = gens.split_first() else { return false };
        let mut r = rem.clone();
        for _ in 0..=bound {
            if go(rest, &r, bound) {
                return true;
            }
            r = &r - g;
        }
        false
    }
    go(gens, alpha, bound)
}

/// Minimum weight over every nonzero combination of the rows.
pub fn brute_min_distance(field: &PrimeField, rows: &[Vec<u64>]) -> u64 {
    let q = field.order();
    let k = rows.len() as u32;
    let n = rows[0].len();
    (1..q.pow(k))
        .map(|mut idx| {
            let mut word = vec![0; n];
            for row in rows {
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

/// A split complete intersection on `H_l` over `F_q`:
/// `t1^d - c1` of degree `(d,0)` and `t2^e t1^s - c2` of degree `(0,e)`.
#[derive(Clone, Debug)]
pub struct SplitCi {
    pub l: i64,
    pub q: u64,
    pub d: i64,
    pub e: i64,
    pub s: i64,
    pub c1: u64,
    pub c2: u64,
    pub points: PointSet,
}

impl SplitCi {
    pub fn degrees(&self) -> [Vec<i64>; 2] {
        [vec![self.d, 0], vec![0, self.e]]
    }

    pub fn problem(&self) -> CiProblem {
        let [a, b] = self.degrees();
        ci(hirzebruch(self.l), &[&a, &b])
    }
}

fn divisors(n: u64) -> Vec<i64> {
    (1..=n).filter(|d| n % d == 0).map(|d| d as i64).collect()
}

/// Samples until the system has `d * e` torus zeros.
pub fn random_split_ci<R: Rng>(rng: &mut R, l: i64, q: u64, max_exp: i64) -> SplitCi {
    let field = PrimeField::new(q).unwrap();
    let exps: Vec<i64> = divisors(q - 1).into_iter().filter(|&d| d <= max_exp).collect();
    loop {
        let d = exps[rng.gen_range(0..exps.len())];
        let e = exps[rng.gen_range(0..exps.len())];
        let s = rng.gen_range(0..=l * e);
        let c1 = rng.gen_range(1..q);
        let c2 = rng.gen_range(1..q);
        let f1 = LaurentPoly::new(field, 2, &[(1, vec![d, 0]), (-(c1 as i64), vec![0, 0])]).unwrap();
        let f2 = LaurentPoly::new(field, 2, &[(1, vec![s, e]), (-(c2 as i64), vec![0, 0])]).unwrap();
        let points = find_torus_zeros(&[f1, f2], &field, 2, 1 << 20).unwrap();
        if points.len() as i64 == d * e {
            return SplitCi { l, q, d, e, s, c1, c2, points };
        }
    }
}
