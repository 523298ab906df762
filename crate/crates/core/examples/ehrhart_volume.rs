//! Vertices, lattice points, Ehrhart polynomials and normalized volumes of
//! the polytopes attached to degree classes.

use toricode::polytope::polytope_of_degree;
use toricode::{DegreeClass, ToricVariety};

fn main() {
    let h2 = ToricVariety::new(
        &[vec![1, 0], vec![0, 1], vec![-1, 2], vec![0, -1]],
        &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        Some(&[vec![1, -2, 1, 0], vec![0, 1, 0, 1]]),
    )
    .unwrap();
    for alpha in [[1, 1], [2, 4], [0, 4]] {
        let p = polytope_of_degree(&h2, &DegreeClass::from(alpha));
        let verts: Vec<String> = p
            .vertices()
            .iter()
            .map(|v| format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        let ehr = p.ehrhart_polynomial().unwrap();
        let coeffs: Vec<String> = ehr.coefficients().iter().map(|c| c.to_string()).collect();
        println!(
            "P{:?}: vertices {}, {} lattice points, Ehrhart coefficients [{}], normalized volume {}",
            alpha,
            verts.join(" "),
            p.count_lattice_points(),
            coeffs.join(", "),
            p.normalized_volume().unwrap()
        );
    }
}
