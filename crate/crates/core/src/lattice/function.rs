use std::collections::BTreeMap;

use super::set::check_dims;
use super::{LatticeSet, Point};
use crate::error::{Error, Result};

/// A finitely supported function ℤ^d → [0, ∞).
///
/// Only strictly positive values are stored, so the key set is the support.
#[derive(Clone, PartialEq, Debug)]
pub struct FiniteFunction {
    dim: usize,
    values: BTreeMap<Point, f64>,
}

impl FiniteFunction {
    pub fn zero(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(FiniteFunction { dim, values: BTreeMap::new() })
    }

    /// Builds a function from `(point, value)` pairs. Zero values are dropped;
    /// negative or non-finite values and repeated points are errors.
    pub fn from_values(dim: usize, entries: impl IntoIterator<Item = (Point, f64)>) -> Result<Self> {
        let mut f = FiniteFunction::zero(dim)?;
        for (p, v) in entries {
            check_dims(dim, p.dim())?;
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidValue { point: p.coords().to_vec(), value: v });
            }
            if f.values.contains_key(&p) {
                return Err(Error::DuplicatePoint(p.coords().to_vec()));
            }
            if v > 0.0 {
                f.values.insert(p, v);
            }
        }
        Ok(f)
    }

    /// One-dimensional function with `values[i]` at the point `i`.
    pub fn from_sequence(values: &[f64]) -> Result<Self> {
        FiniteFunction::from_values(
            1,
            values.iter().enumerate().map(|(i, &v)| (Point::new([i as i64]), v)),
        )
    }

    pub fn indicator(set: &LatticeSet) -> Self {
        FiniteFunction {
            dim: set.dim(),
            values: set.iter().map(|p| (p.clone(), 1.0)).collect(),
        }
    }

    /// Assumes all values are finite and strictly positive.
    pub(crate) fn from_map_unchecked(dim: usize, values: BTreeMap<Point, f64>) -> Self {
        debug_assert!(values.values().all(|v| v.is_finite() && *v > 0.0));
        FiniteFunction { dim, values }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, p: &Point) -> f64 {
        self.values.get(p).copied().unwrap_or(0.0)
    }

    pub fn support(&self) -> LatticeSet {
        LatticeSet::from_sorted_unchecked(self.dim, self.values.keys().cloned().collect())
    }

    pub fn support_size(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, f64)> + '_ {
        self.values.iter().map(|(p, v)| (p, *v))
    }

    pub fn max_value(&self) -> f64 {
        self.values.values().copied().fold(0.0, f64::max)
    }

    /// Pointwise power f^p for p > 0.
    pub fn powf(&self, p: f64) -> FiniteFunction {
        let values = self
            .values
            .iter()
            .map(|(k, v)| (k.clone(), v.powf(p)))
            .filter(|(_, v)| *v > 0.0)
            .collect();
        FiniteFunction { dim: self.dim, values }
    }

    /// ‖f‖_p for p ≥ 1 or p = ∞.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        lp_norm(self, p)
    }
}

/// The ℓ^p norm (Σ f(x)^p)^{1/p}; `p = f64::INFINITY` gives the maximum.
pub fn lp_norm(f: &FiniteFunction, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::domain(format!("lp_norm requires p >= 1, got {p}")));
    }
    if p.is_infinite() {
        return Ok(f.max_value());
    }
    if p == 1.0 {
        return Ok(f.values.values().sum());
    }
    // Scale by the max so large exponents neither overflow nor underflow.
    let scale = f.max_value();
    if scale == 0.0 {
        return Ok(0.0);
    }
    let s: f64 = f.values.values().map(|v| (v / scale).powf(p)).sum();
    Ok(scale * s.powf(1.0 / p))
}
