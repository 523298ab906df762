//! Evaluation codes on eight points of H_2 over F_5: torus points from a
//! Laurent system, parameters per degree, and a monomial equivalence.

use toricode::gfcode::{
    code_dimension, evaluation_matrix, find_torus_zeros, min_distance, monomial_shift_values,
    shift_equivalence_check, CodeParameters, LaurentPoly, PrimeField, DEFAULT_BUDGET,
};
use toricode::{CiProblem, DegreeClass, ToricVariety};

fn main() {
    let x = ToricVariety::new(
        &[vec![1, 0], vec![0, 1], vec![-1, 2], vec![0, -1]],
        &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        Some(&[vec![1, -2, 1, 0], vec![0, 1, 0, 1]]),
    )
    .unwrap();
    let f5 = PrimeField::new(5).unwrap();
    let system = [
        LaurentPoly::new(f5, 2, &[(1, vec![2, 0]), (-1, vec![0, 0])]).unwrap(),
        LaurentPoly::new(f5, 2, &[(1, vec![0, 4]), (-1, vec![0, 0])]).unwrap(),
    ];
    let y = find_torus_zeros(&system, &f5, 2, DEFAULT_BUDGET).unwrap();
    println!("Y = {:?}", y.points());

    let ci = CiProblem::new(x.clone(), vec![DegreeClass::from([2, 0]), DegreeClass::from([0, 4])]).unwrap();
    for alpha in [[0, 1], [1, 1], [0, 2], [1, 2], [0, 3], [1, 3]] {
        let alpha = DegreeClass::from(alpha);
        let code = evaluation_matrix(&x, &alpha, &y, &f5, None).unwrap();
        let params = CodeParameters {
            length: code.length(),
            dimension: code_dimension(&code),
            min_distance: min_distance(&code, DEFAULT_BUDGET).ok(),
            q: 5,
        };
        println!("α = {alpha}: {params}  (formula gives k = {})", ci.hilbert_ci(&alpha));
    }

    // Multiplying by x maps the (1,2) code onto the (2,2) code.
    let from = evaluation_matrix(&x, &DegreeClass::from([1, 2]), &y, &f5, None).unwrap();
    let to = evaluation_matrix(&x, &DegreeClass::from([2, 2]), &y, &f5, None).unwrap();
    let shift = monomial_shift_values(&x, &from, &to, &[1, 0, 0, 0]).unwrap();
    println!("C(1,2) ~ C(2,2) via x: {}", shift_equivalence_check(&from, &to, &shift).unwrap());
}
