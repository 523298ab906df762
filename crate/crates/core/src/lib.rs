//! Multigraded Hilbert functions of zero-dimensional complete intersections
//! on complete simplicial toric varieties, and the evaluation codes they
//! control.
//!
//! The pipeline:
//!
//! * [`toricfan`] validates fan data and fixes the class-group grading,
//! * [`polytope`] turns a degree class into a rational polytope and counts
//!   its lattice points,
//! * [`hilbert`] evaluates the inclusion–exclusion formula for the Hilbert
//!   function, the degree, regularity scans and the Koszul numerator,
//! * [`gfcode`] builds evaluation codes over `F_q` at torus points and
//!   measures their dimension and minimum distance,
//! * [`problem`] and [`cli`] read the JSON inputs and drive the `toricode`
//!   binary.

pub mod cli;
pub mod exactlin;
pub mod gfcode;
pub mod hilbert;
pub mod polytope;
pub mod problem;
pub mod toricfan;

pub use hilbert::{CiProblem, HilbertTable, KoszulNumerator, Window};
pub use polytope::{HPolytope, LatticePointSet};
pub use toricfan::{DegreeClass, ToricVariety};
