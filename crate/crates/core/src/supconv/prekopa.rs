//! Discretized Prékopa–Leindler weights and the resulting one-dimensional
//! sup-convolution inequality.

use super::sup_convolve_all;
use crate::error::{Error, Result};
use crate::lattice::{lp_norm, FiniteFunction, Point};
use crate::margin::log_margin;

/// p_j = e^{jλ}(e^λ − 1)/(e^{kλ} − 1) for j = 0, …, k−1; λ = 0 gives the
/// uniform limit 1/k.
pub fn prekopa_weights(k: usize, lambda: f64) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::domain("prekopa weights need k >= 1"));
    }
    if lambda.is_nan() || lambda < 0.0 || lambda.is_infinite() {
        return Err(Error::domain(format!("lambda must be finite and >= 0, got {lambda}")));
    }
    if lambda == 0.0 {
        return Ok(vec![1.0 / k as f64; k]);
    }
    // e^{(j+1−k)λ} (1 − e^{−λ}) / (1 − e^{−kλ}): no overflow for large λ,
    // no cancellation for small λ.
    let ratio = (-lambda).exp_m1() / (-(k as f64) * lambda).exp_m1();
    Ok((0..k)
        .map(|j| ((j as f64 + 1.0 - k as f64) * lambda).exp() * ratio)
        .collect())
}

/// Log-margin of Σ_n max_j p_j (a_1 ∗̄ ⋯ ∗̄ a_k)(n − j) ≥ ∏_i ‖a_i‖_k.
pub fn prop01_check(functions: &[FiniteFunction], lambda: f64) -> Result<f64> {
    let k = functions.len();
    if k < 2 {
        return Err(Error::domain("the weighted inequality needs at least two functions"));
    }
    if let Some(f) = functions.iter().find(|f| f.dim() != 1) {
        return Err(Error::DimensionMismatch { expected: 1, found: f.dim() });
    }
    if functions.iter().any(FiniteFunction::is_zero) {
        return Err(Error::Empty("every function needs nonempty support"));
    }
    let weights = prekopa_weights(k, lambda)?;
    let conv = sup_convolve_all(functions)?;
    let support: Vec<i64> = conv.iter().map(|(p, _)| p.coords()[0]).collect();
    let lo = support[0];
    let hi = support[support.len() - 1] + k as i64 - 1;
    let lhs: f64 = (lo..=hi)
        .map(|n| {
            weights
                .iter()
                .enumerate()
                .map(|(j, w)| w * conv.get(&Point::new([n - j as i64])))
                .fold(0.0, f64::max)
        })
        .sum();
    let rhs = functions
        .iter()
        .map(|f| lp_norm(f, k as f64))
        .product::<Result<f64>>()?;
    Ok(log_margin(lhs, rhs))
}
