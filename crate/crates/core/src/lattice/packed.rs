//! Packed bitmask representation of subsets of a small box {0,…,s−1}^d.
//!
//! A point x is stored at bit Σ x_i s^i. Because the index map is additive,
//! the Minkowski sum of two packed sets is the OR of shifted copies, as long
//! as every coordinate of every sum stays below `s`.

use super::{LatticeSet, Point};
use crate::error::{Error, Result};

/// Maximum number of cells a packed grid may hold.
pub const PACKED_CELLS: u32 = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackedGrid {
    side: u32,
    dim: usize,
    cells: u32,
}

impl PackedGrid {
    pub fn new(side: u32, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let cells = (side as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        if side == 0 || cells > PACKED_CELLS as u128 {
            return Err(Error::InstanceTooLarge {
                what: "packed grid cells",
                actual: cells,
                limit: PACKED_CELLS as u128,
            });
        }
        Ok(PackedGrid { side, dim, cells: cells as u32 })
    }

    /// Whether {0,…,side−1}^dim fits in a packed word.
    pub fn fits(side: u32, dim: usize) -> bool {
        PackedGrid::new(side, dim).is_ok()
    }

    pub fn side(&self) -> u32 {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> u32 {
        self.cells
    }

    pub fn index(&self, coords: &[i64]) -> Option<u32> {
        if coords.len() != self.dim {
            return None;
        }
        let mut idx = 0u32;
        for &c in coords.iter().rev() {
            if c < 0 || c >= self.side as i64 {
                return None;
            }
            idx = idx * self.side + c as u32;
        }
        Some(idx)
    }

    pub fn coords(&self, mut index: u32) -> Point {
        let mut coords = Vec::with_capacity(self.dim);
        for _ in 0..self.dim {
            coords.push((index % self.side) as i64);
            index /= self.side;
        }
        Point::from(coords)
    }

    pub fn pack(&self, set: &LatticeSet) -> Result<u128> {
        if set.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: set.dim() });
        }
        let mut bits = 0u128;
        for p in set {
            let i = self.index(p.coords()).ok_or_else(|| {
                Error::domain(format!("point {p} lies outside the packed grid of side {}", self.side))
            })?;
            bits |= 1u128 << i;
        }
        Ok(bits)
    }

    pub fn unpack(&self, bits: u128) -> LatticeSet {
        let points = iter_bits(bits).map(|i| self.coords(i));
        LatticeSet::from_points(self.dim, points).expect("packed grid points have grid dimension")
    }

    /// Table mapping each cell of `self` to the cell of `target` holding
    /// `scale · x`. Cells that do not fit map to `None`.
    pub fn embedding(&self, target: &PackedGrid, scale: i64) -> Vec<Option<u32>> {
        (0..self.cells)
            .map(|i| {
                let scaled: Vec<i64> = self.coords(i).coords().iter().map(|c| c * scale).collect();
                target.index(&scaled)
            })
            .collect()
    }
}

/// Re-embeds a packed set using a table from [`PackedGrid::embedding`].
///
/// Panics if a selected cell has no image.
pub fn embed(bits: u128, table: &[Option<u32>]) -> u128 {
    iter_bits(bits).fold(0u128, |acc, i| {
        acc | 1u128 << table[i as usize].expect("embedded cell lies inside the target grid")
    })
}

/// Minkowski sum of two packed sets in the same grid.
///
/// The caller guarantees that all coordinate sums stay inside the grid;
/// otherwise carries corrupt the result.
#[inline]
pub fn packed_sum(a: u128, b: u128) -> u128 {
    let (small, large) = if a.count_ones() <= b.count_ones() { (a, b) } else { (b, a) };
    let mut out = 0u128;
    let mut rest = small;
    while rest != 0 {
        let i = rest.trailing_zeros();
        out |= large << i;
        rest &= rest - 1;
    }
    out
}

pub fn iter_bits(mut bits: u128) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if bits == 0 {
            return None;
        }
        let i = bits.trailing_zeros();
        bits &= bits - 1;
        Some(i)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::cube;
    use crate::sumset::minkowski_sum;

    #[test]
    fn index_roundtrip() {
        let g = PackedGrid::new(3, 3).unwrap();
        for i in 0..g.cells() {
            assert_eq!(g.index(g.coords(i).coords()), Some(i));
        }
        assert_eq!(g.index(&[3, 0, 0]), None);
        assert_eq!(g.index(&[-1, 0, 0]), None);
    }

    #[test]
    fn grid_size_limit() {
        assert!(PackedGrid::fits(2, 7));
        assert!(!PackedGrid::fits(2, 8) || PACKED_CELLS >= 256);
        assert!(!PackedGrid::fits(12, 2));
    }

    #[test]
    fn packed_sums_match_generic_sums() {
        let src = PackedGrid::new(3, 2).unwrap();
        let dst = PackedGrid::new(5, 2).unwrap();
        let table = src.embedding(&dst, 1);
        let base = cube(2, 2).unwrap();
        let subsets: Vec<_> = base.nonempty_subsets().unwrap().step_by(7).collect();
        for a in &subsets {
            for b in &subsets {
                let pa = embed(src.pack(a).unwrap(), &table);
                let pb = embed(src.pack(b).unwrap(), &table);
                assert_eq!(dst.unpack(packed_sum(pa, pb)), minkowski_sum(a, b).unwrap());
            }
        }
    }

    #[test]
    fn pack_rejects_outside_points() {
        let g = PackedGrid::new(2, 1).unwrap();
        assert!(g.pack(&LatticeSet::from_ints([0, 2])).is_err());
    }
}
