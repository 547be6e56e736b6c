//! Integer-lattice points, finite sets and finitely supported functions.

mod function;
pub mod io;
pub mod packed;
mod point;
pub(crate) mod set;

pub use function::{lp_norm, FiniteFunction};
pub use packed::PackedGrid;
pub use point::Point;
pub use set::{cube, LatticeSet, SubsetStream, SUBSET_ENUMERATION_CAP};
