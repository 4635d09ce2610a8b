//! Short rational generating functions of bounded index: construction from polyhedra and
//! Presburger formulas, the operation calculus, and brute-force oracles for every operation.

pub mod barvinok;
pub mod calculus;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod lp;
pub mod num;
pub mod presburger;
pub mod random;

pub use error::{Error, Result};
pub use gf::{CoefficientTable, ExpansionDirection, ExponentVector, GfTerm, LatticeBox, ShortGf};
