//! Exact computation of the logarithmic de Rham cohomology of a nodal curve
//! presented by its dual graph.
//!
//! A model is a graph whose vertices are rational components of the curve
//! (each carrying the rational coordinates of its nodes, or a genus marker)
//! and whose edges are the nodes. From this the crate computes, in exact
//! rational arithmetic:
//!
//! - the first logarithmic de Rham cohomology of the associated log smooth
//!   model, with an explicit hypercocycle basis;
//! - the monodromy operator on it, as a matrix in that basis;
//! - the first Du Bois cohomology of the special fiber and the comparison
//!   map from it;
//! - a mechanical verification that the Du Bois classes are exactly the
//!   monodromy invariants.
//!
//! All linear algebra is over the rationals; there are no floating point
//! numbers anywhere in the crate.

pub mod arith;
pub mod cohomology;
pub mod families;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod monodromy;
pub mod report;

pub use arith::poly::Poly;
pub use arith::rat::Rat;
pub use arith::ratfunc::{RatForm, RatFunc};
pub use arith::ArithError;
