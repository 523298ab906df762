//! Hilbert function tables and regularity of two complete intersections on
//! the Hirzebruch surface H_2.

use toricode::{CiProblem, DegreeClass, ToricVariety, Window};

fn h2() -> ToricVariety {
    ToricVariety::new(
        &[vec![1, 0], vec![0, 1], vec![-1, 2], vec![0, -1]],
        &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        Some(&[vec![1, -2, 1, 0], vec![0, 1, 0, 1]]),
    )
    .unwrap()
}

fn show(degrees: [[i64; 2]; 2], window: Window) {
    let p = CiProblem::new(h2(), degrees.iter().map(|d| DegreeClass::from(*d)).collect()).unwrap();
    println!("degrees {:?}, deg Y = {}", degrees, p.degree_of_ci().unwrap());
    print!("{}", p.hilbert_table(&window).unwrap().render_text());
    let scan = p.regularity_scan(&window).unwrap();
    let least: Vec<String> = scan
        .members
        .iter()
        .filter(|m| !scan.members.iter().any(|o| o != *m && p.variety().preceq(o, m)))
        .map(|m| m.to_string())
        .collect();
    println!("H = deg Y from {} (anchor {})\n", least.join(", "), scan.anchor);
}

fn main() {
    show([[4, 0], [0, 2]], Window::new(vec![-10, 0], vec![10, 2]).unwrap());
    show([[2, 0], [0, 4]], Window::new(vec![-10, 0], vec![10, 4]).unwrap());
}
