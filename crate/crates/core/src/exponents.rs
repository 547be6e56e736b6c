//! Sharp exponents and constants of the sumset inequalities.
//!
//! Every constant can be produced as an [`ExponentConstant`], which carries
//! the residual of its defining relation so reports can show the evidence.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{bisect, Root};

/// Which constant, with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConstantKind {
    CubeUpper { n: u32, m: u32 },
    Tau { m: u32 },
    QHypercube { n: u32 },
    COfP { p: f64 },
    Conjugate { p: f64 },
    ROfN { n: u32 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentConstant {
    pub value: f64,
    pub definition: ConstantKind,
    pub formula: String,
    /// Signed residual of the defining relation at `value`.
    pub residual: f64,
    /// Bound on the absolute error of `value` from the computation itself.
    pub tolerance: f64,
    /// For implicitly defined constants: sign changes of the residual seen on
    /// a sampling grid. Exactly one is expected.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sampled_sign_changes: Option<usize>,
}

impl ConstantKind {
    pub fn compute(self) -> Result<ExponentConstant> {
        let closed = |value: f64, formula: &str, residual: f64| ExponentConstant {
            value,
            definition: self,
            formula: formula.to_string(),
            residual,
            tolerance: 4.0 * f64::EPSILON * value.abs(),
            sampled_sign_changes: None,
        };
        match self {
            ConstantKind::CubeUpper { n, m } => {
                let v = cube_upper_exponent(n, m)?;
                let res = n as f64 * v * ((m + 1) as f64).ln() - ((n * m + 1) as f64).ln();
                Ok(closed(v, "log(nm+1)/(n log(m+1))", res))
            }
            ConstantKind::Tau { m } => {
                let root = tau_root(m)?;
                Ok(ExponentConstant {
                    value: root.value,
                    definition: self,
                    formula: "1 + (m(m+1))^t = (m+1)^(2t)".into(),
                    residual: tau_residual(m, root.value),
                    tolerance: root.half_width,
                    sampled_sign_changes: Some(tau_sign_changes(m, 1000)),
                })
            }
            ConstantKind::QHypercube { n } => {
                let v = q_hypercube(n)?;
                Ok(closed(v, "n/log2(n+1)", v * ((n + 1) as f64).log2() - n as f64))
            }
            ConstantKind::COfP { p } => {
                let v = c_of_p(p)?;
                let q = conjugate(p)?;
                let res = (1.0 / v) * LN_2 - (p.ln() / p + q.ln() / q);
                Ok(closed(v, "2^(1/c) = p^(1/p) q^(1/q)", res))
            }
            ConstantKind::Conjugate { p } => {
                let v = conjugate(p)?;
                Ok(closed(v, "1/p + 1/q = 1", 1.0 / p + 1.0 / v - 1.0))
            }
            ConstantKind::ROfN { n } => {
                let v = r_of_n(n)?;
                Ok(closed(v, "log2(n+1)", v * LN_2 - ((n + 1) as f64).ln()))
            }
        }
    }
}

fn positive(name: &str, v: u32) -> Result<()> {
    if v == 0 {
        return Err(Error::domain(format!("{name} must be a positive integer")));
    }
    Ok(())
}

/// log(nm+1) / (n log(m+1)): the exponent attained by n copies of the full cube {0,…,m}^d.
pub fn cube_upper_exponent(n: u32, m: u32) -> Result<f64> {
    positive("n", n)?;
    positive("m", m)?;
    Ok(((n as f64) * (m as f64) + 1.0).ln() / (n as f64 * (m as f64 + 1.0).ln()))
}

pub fn tau_residual(m: u32, t: f64) -> f64 {
    let m = m as f64;
    ((m + 1.0).ln() * 2.0 * t).exp() - ((m * (m + 1.0)).ln() * t).exp() - 1.0
}

fn tau_root(m: u32) -> Result<Root> {
    if m < 3 {
        return Err(Error::domain(format!("tau is defined for m >= 3, got {m}")));
    }
    let g = |t| tau_residual(m, t);
    let (lo, hi) = if g(0.5).signum() != g(1.0).signum() { (0.5, 1.0) } else { (0.01, 1.0) };
    bisect(g, lo, hi, 0.0)
}

/// τ_m: the root in (0, 1) of 1 + (m(m+1))^τ = (m+1)^{2τ}, for m ≥ 3.
pub fn tau(m: u32) -> Result<f64> {
    tau_root(m).map(|r| r.value)
}

/// Strict sign changes of the τ residual on `samples` interior points of (0, 1).
pub fn tau_sign_changes(m: u32, samples: usize) -> usize {
    let signs: Vec<f64> = (1..=samples)
        .map(|i| tau_residual(m, i as f64 / (samples + 1) as f64))
        .filter(|v| *v != 0.0)
        .map(f64::signum)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// n / log₂(n+1), the ℓ^q exponent of the n-fold hypercube inequality.
pub fn q_hypercube(n: u32) -> Result<f64> {
    positive("n", n)?;
    Ok(n as f64 / r_of_n(n)?)
}

/// log₂(n+1)/n, the sharp set exponent for n-fold sums of subsets of {0,1}^d.
pub fn hypercube_exponent(n: u32) -> Result<f64> {
    positive("n", n)?;
    Ok(r_of_n(n)? / n as f64)
}

pub fn r_of_n(n: u32) -> Result<f64> {
    positive("n", n)?;
    Ok(((n + 1) as f64).log2())
}

/// q = p/(p−1) for p > 1.
pub fn conjugate(p: f64) -> Result<f64> {
    if p.is_nan() || p <= 1.0 {
        return Err(Error::domain(format!("conjugate exponent needs p > 1, got {p}")));
    }
    if p.is_infinite() {
        return Ok(1.0);
    }
    Ok(p / (p - 1.0))
}

/// c with 2^{1/c} = p^{1/p} q^{1/q}, q the conjugate of p.
pub fn c_of_p(p: f64) -> Result<f64> {
    let q = conjugate(p)?;
    let log2_mix = (p.ln() / p + q.ln() / q) / LN_2;
    Ok(1.0 / log2_mix)
}

fn central_binomial(k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * (k + i) as f64 / i as f64)
}

/// log₂ C(2k, k): the energy exponent E_k(A) ≤ |A|^{…} on subsets of {0,1}^d.
pub fn energy_cube_exponent(k: u32) -> Result<f64> {
    positive("k", k)?;
    Ok(central_binomial(k).log2())
}

/// log_{(k+1)/2} C(2k, k): the exponent of E_k(A) ≤ (|kA|/|A|)^p.
pub fn energy_doubling_exponent(k: u32) -> Result<f64> {
    if k < 2 {
        return Err(Error::domain(format!("energy doubling exponent needs k >= 2, got {k}")));
    }
    Ok(central_binomial(k).ln() / ((k as f64 + 1.0) / 2.0).ln())
}

/// log_{3/2} 2 ≈ 1.7095, the exponent of the sum-of-dilates bound.
pub fn dilate_exponent() -> f64 {
    LN_2 / 1.5f64.ln()
}
