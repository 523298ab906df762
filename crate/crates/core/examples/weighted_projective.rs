//! Hilbert series numerators and the a-invariant on P(1,2,3).

use toricode::hilbert::a_invariant_wps;
use toricode::{CiProblem, DegreeClass, ToricVariety};

fn main() {
    let x = ToricVariety::new(
        &[vec![-2, -3], vec![1, 0], vec![0, 1]],
        &[vec![0, 1], vec![1, 2], vec![0, 2]],
        Some(&[vec![1, 2, 3]]),
    )
    .unwrap();
    for degrees in [[2, 9], [1, 3]] {
        let p = CiProblem::new(x.clone(), degrees.iter().map(|&d| DegreeClass::from([d])).collect()).unwrap();
        let num = p.koszul_numerator();
        let h: Vec<i64> = (0..=12).map(|a| p.hilbert_ci(&DegreeClass::from([a]))).collect();
        println!("degrees {degrees:?}: numerator {num}");
        println!("  H(0..=12) = {h:?}");
        let a = a_invariant_wps(&x, &num).unwrap();
        println!("  a = {}, regularity from {} if a degree-one non-zerodivisor exists", a.value, a.regularity_anchor());
        println!("  semi-ample degrees: {}", p.all_semiample());
    }
}
