//! Validates fan data, computes a grading when none is given, and tests
//! effectivity and semi-ampleness of a few classes.

use toricode::gfcode::PrimeField;
use toricode::{DegreeClass, ToricVariety};

fn main() {
    let h2 = ToricVariety::new(
        &[vec![1, 0], vec![0, 1], vec![-1, 2], vec![0, -1]],
        &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        None,
    )
    .expect("valid fan");
    println!("H_2 grading (computed): {:?}", h2.grading().to_i64_rows());
    println!("betas: {:?}", h2.betas().iter().map(|b| b.to_string()).collect::<Vec<_>>());

    for alpha in [[1, 1], [0, 1], [-2, 1], [-1, 0]] {
        let a = DegreeClass::from(alpha);
        let effective = h2.is_effective(&a);
        let semiample = h2.is_semiample(&a).unwrap();
        println!("{a}: effective {effective}, semi-ample {semiample}");
    }

    let f7 = PrimeField::new(7).unwrap();
    let t = h2.cox_to_torus(&[2, 3, 4, 5], &f7).unwrap();
    println!("Cox point (2,3,4,5) over F_7 lies over torus point {t:?}");

    let bad = ToricVariety::new(&[vec![2, 0], vec![0, 1], vec![-1, -1]], &[vec![0, 1], vec![1, 2], vec![2, 0]], None);
    println!("ray (2,0): {}", bad.unwrap_err());
}
