use std::ops::Range;

use super::Point;
use crate::error::{Error, Result};

/// Largest base set whose nonempty subsets we are willing to enumerate.
pub const SUBSET_ENUMERATION_CAP: usize = 24;

/// A finite subset of ℤ^d, stored sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LatticeSet {
    dim: usize,
    points: Vec<Point>,
}

impl LatticeSet {
    pub fn empty(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(LatticeSet { dim, points: Vec::new() })
    }

    /// Builds a set, silently merging repeated points.
    pub fn from_points(dim: usize, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut points = collect_checked(dim, points)?;
        points.sort_unstable();
        points.dedup();
        Ok(LatticeSet { dim, points })
    }

    /// Builds a set, rejecting repeated points.
    pub fn from_unique_points(dim: usize, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut points = collect_checked(dim, points)?;
        points.sort_unstable();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0].coords().to_vec()));
        }
        Ok(LatticeSet { dim, points })
    }

    /// Convenience constructor for subsets of ℤ.
    pub fn from_ints(values: impl IntoIterator<Item = i64>) -> Self {
        let mut points: Vec<Point> = values.into_iter().map(|v| Point::new([v])).collect();
        points.sort_unstable();
        points.dedup();
        LatticeSet { dim: 1, points }
    }

    /// Assumes `points` is already sorted, deduplicated and of dimension `dim`.
    pub(crate) fn from_sorted_unchecked(dim: usize, points: Vec<Point>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(points.iter().all(|p| p.dim() == dim));
        LatticeSet { dim, points }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cardinality(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn union(&self, other: &LatticeSet) -> Result<LatticeSet> {
        check_dims(self.dim, other.dim)?;
        LatticeSet::from_points(self.dim, self.points.iter().chain(other.points.iter()).cloned())
    }

    pub fn is_subset(&self, other: &LatticeSet) -> bool {
        self.dim == other.dim && self.points.iter().all(|p| other.contains(p))
    }

    /// The Cartesian product A × B ⊂ ℤ^{d_A + d_B}.
    pub fn product(&self, other: &LatticeSet) -> LatticeSet {
        let mut points = Vec::with_capacity(self.points.len() * other.points.len());
        for a in &self.points {
            for b in &other.points {
                points.push(a.concat(b));
            }
        }
        // Lexicographic order of (a, b) pairs is already the order of the concatenation.
        LatticeSet::from_sorted_unchecked(self.dim + other.dim, points)
    }

    /// Coordinatewise bounding box, `None` for the empty set.
    pub fn bounds(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let first = self.points.first()?;
        let mut lo = first.coords().to_vec();
        let mut hi = lo.clone();
        for p in &self.points[1..] {
            for (i, &c) in p.coords().iter().enumerate() {
                lo[i] = lo[i].min(c);
                hi[i] = hi[i].max(c);
            }
        }
        Some((lo, hi))
    }

    /// Lazily enumerates every nonempty subset in bitmask order over the
    /// sorted point list (bit `i` selects the `i`-th point).
    pub fn nonempty_subsets(&self) -> Result<SubsetStream> {
        SubsetStream::new(self.clone())
    }
}

impl<'a> IntoIterator for &'a LatticeSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

fn collect_checked(dim: usize, points: impl IntoIterator<Item = Point>) -> Result<Vec<Point>> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    points
        .into_iter()
        .map(|p| {
            check_dims(dim, p.dim())?;
            Ok(p)
        })
        .collect()
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// The grid {0, 1, …, m}^d.
pub fn cube(m: u32, d: usize) -> Result<LatticeSet> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let side = m as u64 + 1;
    let total = (side as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > 1 << 26 {
        return Err(Error::InstanceTooLarge { what: "cube size", actual: total, limit: 1 << 26 });
    }
    let mut points = Vec::with_capacity(total as usize);
    let mut coords = vec![0i64; d];
    loop {
        points.push(Point::from(coords.as_slice()));
        // Odometer with the last coordinate fastest keeps lexicographic order.
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(LatticeSet::from_sorted_unchecked(d, points));
            }
            i -= 1;
            if (coords[i] as u64) < m as u64 {
                coords[i] += 1;
                break;
            }
            coords[i] = 0;
        }
    }
}

/// Stream of the nonempty subsets of a base set, indexed by bitmask `1..2^n`.
///
/// Streams over disjoint mask ranges are independent, so a campaign can
/// split the full stream into contiguous chunks and consume them in parallel.
#[derive(Clone, Debug)]
pub struct SubsetStream {
    base: LatticeSet,
    next: u64,
    end: u64,
}

impl SubsetStream {
    fn new(base: LatticeSet) -> Result<Self> {
        let n = base.cardinality();
        if n > SUBSET_ENUMERATION_CAP {
            return Err(Error::InstanceTooLarge {
                what: "base set for subset enumeration",
                actual: n as u128,
                limit: SUBSET_ENUMERATION_CAP as u128,
            });
        }
        Ok(SubsetStream { base, next: 1, end: 1u64 << n })
    }

    /// The full mask range `1..2^n` covered by this stream.
    pub fn mask_range(&self) -> Range<u64> {
        self.next..self.end
    }

    /// Restricts the stream to masks in `range` (intersected with the current range).
    pub fn restrict(mut self, range: Range<u64>) -> Self {
        self.next = self.next.max(range.start);
        self.end = self.end.min(range.end).max(self.next);
        self
    }

    /// Splits into two independent halves covering the same masks.
    pub fn split(self) -> (Self, Self) {
        let mid = self.next + (self.end - self.next) / 2;
        let left = SubsetStream { base: self.base.clone(), next: self.next, end: mid };
        let right = SubsetStream { base: self.base, next: mid, end: self.end };
        (left, right)
    }

    pub fn subset_for_mask(&self, mask: u64) -> LatticeSet {
        subset_for_mask(&self.base, mask)
    }
}

pub(crate) fn subset_for_mask(base: &LatticeSet, mask: u64) -> LatticeSet {
    let points = base
        .points
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, p)| p.clone())
        .collect();
    LatticeSet::from_sorted_unchecked(base.dim, points)
}

impl Iterator for SubsetStream {
    type Item = LatticeSet;

    fn next(&mut self) -> Option<LatticeSet> {
        if self.next >= self.end {
            return None;
        }
        let set = subset_for_mask(&self.base, self.next);
        self.next += 1;
        Some(set)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for SubsetStream {}
