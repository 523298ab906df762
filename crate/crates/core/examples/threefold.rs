//! A complete intersection of 64 points on a toric threefold over F_5.

use std::path::Path;

use toricode::gfcode::{code_dimension, evaluation_matrix, DEFAULT_BUDGET};
use toricode::problem::load_problem;

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/threefold_code.json");
    let p = load_problem(&path).unwrap();
    let alpha = p.alpha().unwrap();
    let degrees = p.ci.gen_degrees();
    for mask in 0..8u32 {
        let shift = (0..3)
            .filter(|i| mask & (1 << i) != 0)
            .fold(alpha.clone(), |acc, i| &acc - &degrees[i]);
        let count = p.ci.lattice_count(&shift);
        if count > 0 {
            println!("|P{shift} ∩ M| = {count}");
        }
    }
    println!("H{alpha} = {}", p.ci.hilbert_ci(&alpha));
    for d in degrees {
        println!("{d} semi-ample: {}", p.ci.variety().is_semiample(d).unwrap());
    }
    println!("H(Σα_i) = {}", p.ci.hilbert_ci(&p.ci.degree_sum()));

    let y = p.points(DEFAULT_BUDGET).unwrap();
    let code = evaluation_matrix(p.ci.variety(), &alpha, &y, &p.field().unwrap(), None).unwrap();
    println!(
        "{} points, {}x{} evaluation matrix of rank {}",
        y.len(),
        code.matrix.nrows(),
        code.length(),
        code_dimension(&code)
    );
}
