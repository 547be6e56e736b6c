//! The one-dimensional reduced instance: n nonnegative sequences y⁽ʲ⁾ of
//! length m+1 with positive weights p_j.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SequenceFamily {
    rows: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

impl SequenceFamily {
    pub fn new(rows: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Empty("sequence family needs at least one row"));
        }
        if rows.len() != weights.len() {
            return Err(Error::domain(format!("{} rows but {} weights", rows.len(), weights.len())));
        }
        let len = rows[0].len();
        if len == 0 {
            return Err(Error::Empty("rows must have at least one entry"));
        }
        for (j, row) in rows.iter().enumerate() {
            if row.len() != len {
                return Err(Error::domain(format!("row {j} has length {}, expected {len}", row.len())));
            }
            if row.iter().any(|v| !v.is_finite() || *v < 0.0) {
                return Err(Error::domain(format!("row {j} has a negative or non-finite entry")));
            }
            if row.iter().all(|v| *v == 0.0) {
                return Err(Error::domain(format!("row {j} is identically zero")));
            }
        }
        if let Some(p) = weights.iter().find(|p| !(p.is_finite() && **p > 0.0)) {
            return Err(Error::domain(format!("weights must be positive, got {p}")));
        }
        Ok(SequenceFamily { rows, weights })
    }

    /// Same weight for every row.
    pub fn uniform(rows: Vec<Vec<f64>>, weight: f64) -> Result<Self> {
        let n = rows.len();
        SequenceFamily::new(rows, vec![weight; n])
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Top index: each row is y_0, …, y_m.
    pub fn m(&self) -> usize {
        self.rows[0].len() - 1
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Applies y ↦ y^{e_j} row by row.
    pub fn map_rows(&self, exponent: impl Fn(f64) -> f64) -> SequenceFamily {
        let rows = self
            .rows
            .iter()
            .zip(&self.weights)
            .map(|(row, &p)| {
                let e = exponent(p);
                row.iter().map(|y| if *y == 0.0 { 0.0 } else { y.powf(e) }).collect()
            })
            .collect();
        SequenceFamily { rows, weights: self.weights.clone() }
    }
}

/// (a ∗̄ b)[k] = max_{i+j=k} a[i] b[j] for sequences indexed from 0.
pub fn max_product_convolution(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0f64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let v = x * y;
            if v > out[i + j] {
                out[i + j] = v;
            }
        }
    }
    out
}

fn max_sum_of_products<'a>(rows: impl IntoIterator<Item = &'a Vec<f64>>) -> f64 {
    let mut iter = rows.into_iter();
    let first = iter.next().expect("family has rows").clone();
    iter.fold(first, |acc, row| max_product_convolution(&acc, row)).iter().sum()
}

/// Σ_{k=0}^{nm} max_{i_1+…+i_n=k} ∏_j (y⁽ʲ⁾_{i_j})^{p_j}.
pub fn general_lhs(family: &SequenceFamily) -> f64 {
    max_sum_of_products(family.map_rows(|p| p).rows())
}

/// ∏_j (Σ_i y⁽ʲ⁾_i)^{p_j}.
pub fn general_rhs(family: &SequenceFamily) -> f64 {
    family
        .rows
        .iter()
        .zip(&family.weights)
        .map(|(row, &p)| row.iter().sum::<f64>().powf(p))
        .product()
}

/// The same inequality written for z = y^{p}: Σ_k max ∏_j z⁽ʲ⁾_{i_j}, with the
/// family's entries read as z.
pub fn substituted_lhs(family: &SequenceFamily) -> f64 {
    max_sum_of_products(family.rows())
}

/// ∏_j (Σ_i (z⁽ʲ⁾_i)^{1/p_j})^{p_j}, the right-hand side matching [`substituted_lhs`].
pub fn substituted_rhs(family: &SequenceFamily) -> f64 {
    general_rhs(&family.map_rows(|p| 1.0 / p))
}

/// Sorts every row into nonincreasing order; weights are unchanged.
pub fn rearrange_decreasing(family: &SequenceFamily) -> SequenceFamily {
    let rows = family
        .rows
        .iter()
        .map(|row| {
            let mut r = row.clone();
            r.sort_by(|a, b| b.total_cmp(a));
            r
        })
        .collect();
    SequenceFamily { rows, weights: family.weights.clone() }
}

/// Σ_{k=0}^{4} max_{i+j=k} x_i^p y_j^p − (x_0+x_1+x_2)^p (y_0+y_1+y_2)^p.
pub fn six_point_gap(x: [f64; 3], y: [f64; 3], p: f64) -> f64 {
    let xp = x.map(|v| if v == 0.0 { 0.0 } else { v.powf(p) });
    let yp = y.map(|v| if v == 0.0 { 0.0 } else { v.powf(p) });
    let lhs: f64 = max_product_convolution(&xp, &yp).iter().sum();
    let rhs = x.iter().sum::<f64>().powf(p) * y.iter().sum::<f64>().powf(p);
    lhs - rhs
}
