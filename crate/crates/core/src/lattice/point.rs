use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// A point of the integer lattice ℤ^d.
///
/// Points order lexicographically, first coordinate most significant.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(SmallVec<[i64; 4]>);

impl Point {
    pub fn new(coords: impl IntoIterator<Item = i64>) -> Self {
        Point(coords.into_iter().collect())
    }

    pub fn origin(dim: usize) -> Self {
        Point(SmallVec::from_elem(0, dim))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Drops the last coordinate.
    pub fn head(&self) -> Point {
        Point(self.0[..self.0.len() - 1].iter().copied().collect())
    }

    pub fn concat(&self, other: &Point) -> Point {
        Point(self.0.iter().chain(other.0.iter()).copied().collect())
    }
}

impl From<Vec<i64>> for Point {
    fn from(v: Vec<i64>) -> Self {
        Point(SmallVec::from_vec(v))
    }
}

impl From<&[i64]> for Point {
    fn from(v: &[i64]) -> Self {
        Point(SmallVec::from_slice(v))
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(v: [i64; N]) -> Self {
        Point(v.iter().copied().collect())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
