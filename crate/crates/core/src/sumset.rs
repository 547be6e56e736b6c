//! Exact Minkowski-sum arithmetic on finite subsets of ℤ^d.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::set::check_dims;
use crate::lattice::{LatticeSet, Point};

/// Guard rails for exact arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Every coordinate produced by a sum must satisfy |c| ≤ `coord_band`.
    pub coord_band: i64,
    /// Maximum number of elementary additions one representation-count call may perform.
    pub work_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { coord_band: 1 << 40, work_cap: 100_000_000 }
    }
}

impl Limits {
    fn add_points(&self, a: &Point, b: &Point, scale: i64) -> Result<Point> {
        let mut coords = Vec::with_capacity(a.dim());
        for (&x, &y) in a.coords().iter().zip(b.coords()) {
            let v = x as i128 + scale as i128 * y as i128;
            if v.unsigned_abs() > self.coord_band as u128 {
                return Err(Error::CoordinateOverflow { value: v, band: self.coord_band });
            }
            coords.push(v as i64);
        }
        Ok(Point::from(coords))
    }

    /// A + λ·B under these limits.
    pub fn dilated_sum(&self, a: &LatticeSet, lambda: u64, b: &LatticeSet) -> Result<LatticeSet> {
        check_dims(a.dim(), b.dim())?;
        if lambda == 0 {
            return Err(Error::domain("dilation factor must be a positive integer"));
        }
        let scale = i64::try_from(lambda).map_err(|_| Error::domain("dilation factor too large"))?;
        let mut out = Vec::with_capacity(a.cardinality() * b.cardinality());
        for x in a {
            for y in b {
                out.push(self.add_points(x, y, scale)?);
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(LatticeSet::from_sorted_unchecked(a.dim(), out))
    }

    pub fn minkowski_sum(&self, a: &LatticeSet, b: &LatticeSet) -> Result<LatticeSet> {
        self.dilated_sum(a, 1, b)
    }

    /// kA = A + A + ⋯ + A (k copies).
    pub fn iterated_sum(&self, a: &LatticeSet, k: u32) -> Result<LatticeSet> {
        if k == 0 {
            return Err(Error::domain("iterated sum needs k >= 1"));
        }
        let mut acc = a.clone();
        for _ in 1..k {
            acc = self.minkowski_sum(&acc, a)?;
        }
        Ok(acc)
    }

    /// A_1 + ⋯ + A_n for a nonempty list of sets.
    pub fn sum_all<'a>(&self, sets: impl IntoIterator<Item = &'a LatticeSet>) -> Result<LatticeSet> {
        let mut iter = sets.into_iter();
        let first = iter.next().ok_or(Error::Empty("sum of no sets"))?.clone();
        iter.try_fold(first, |acc, s| self.minkowski_sum(&acc, s))
    }

    pub fn representation_counts(&self, a: &LatticeSet, k: u32) -> Result<RepresentationCounts> {
        if k == 0 {
            return Err(Error::domain("representation counts need k >= 1"));
        }
        let mut counts: BTreeMap<Point, u64> = a.iter().map(|p| (p.clone(), 1)).collect();
        let mut work: u128 = 0;
        for _ in 1..k {
            work += counts.len() as u128 * a.cardinality() as u128;
            if work > self.work_cap as u128 {
                return Err(Error::WorkCapExceeded { needed: work, cap: self.work_cap });
            }
            let mut next: BTreeMap<Point, u64> = BTreeMap::new();
            for (z, &c) in &counts {
                for x in a {
                    let slot = next.entry(self.add_points(z, x, 1)?).or_insert(0);
                    *slot = slot.checked_add(c).ok_or(Error::CountOverflow)?;
                }
            }
            counts = next;
        }
        Ok(RepresentationCounts { dim: a.dim(), k, counts })
    }

    pub fn additive_energy(&self, a: &LatticeSet, k: u32) -> Result<u128> {
        self.representation_counts(a, k)?.energy()
    }
}

/// Ordered k-fold representation counts r_k(z) = #{(a_1,…,a_k) ∈ A^k : Σ a_i = z}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationCounts {
    dim: usize,
    k: u32,
    counts: BTreeMap<Point, u64>,
}

impl RepresentationCounts {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn get(&self, z: &Point) -> u64 {
        self.counts.get(z).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, u64)> + '_ {
        self.counts.iter().map(|(p, c)| (p, *c))
    }

    /// Σ_z r_k(z), which is |A|^k.
    pub fn total(&self) -> u128 {
        self.counts.values().map(|&c| c as u128).sum()
    }

    /// The set kA.
    pub fn support(&self) -> LatticeSet {
        LatticeSet::from_sorted_unchecked(self.dim, self.counts.keys().cloned().collect())
    }

    /// E_k(A) = Σ_z r_k(z)².
    pub fn energy(&self) -> Result<u128> {
        self.counts.values().try_fold(0u128, |acc, &c| {
            (c as u128)
                .checked_mul(c as u128)
                .and_then(|sq| acc.checked_add(sq))
                .ok_or(Error::CountOverflow)
        })
    }
}

pub fn minkowski_sum(a: &LatticeSet, b: &LatticeSet) -> Result<LatticeSet> {
    Limits::default().minkowski_sum(a, b)
}

pub fn iterated_sum(a: &LatticeSet, k: u32) -> Result<LatticeSet> {
    Limits::default().iterated_sum(a, k)
}

pub fn dilated_sum(a: &LatticeSet, lambda: u64, b: &LatticeSet) -> Result<LatticeSet> {
    Limits::default().dilated_sum(a, lambda, b)
}

pub fn sum_all<'a>(sets: impl IntoIterator<Item = &'a LatticeSet>) -> Result<LatticeSet> {
    Limits::default().sum_all(sets)
}

pub fn representation_counts(a: &LatticeSet, k: u32) -> Result<RepresentationCounts> {
    Limits::default().representation_counts(a, k)
}

/// E_k(A); the empty set has energy 0.
pub fn additive_energy(a: &LatticeSet, k: u32) -> Result<u128> {
    Limits::default().additive_energy(a, k)
}
