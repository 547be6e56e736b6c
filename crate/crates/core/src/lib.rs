//! Exact sumset arithmetic, sup-convolutions, sharp exponents and checkers
//! for discrete Brunn–Minkowski-type inequalities on ℤ^d.

pub mod analytic;
pub mod error;
pub mod exponents;
pub mod lattice;
pub mod margin;
pub mod roots;
pub mod sumset;
pub mod supconv;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{cube, lp_norm, FiniteFunction, LatticeSet, Point};
