//! Pseudo-polynomials Σ c_i x^{α_i} with real exponents α_i ≥ 0.
//!
//! Descartes' rule of signs extends to this setting: the number of positive
//! roots, counted with multiplicity, is at most the number of sign changes
//! of the coefficient sequence ordered by exponent.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients with magnitude below this are treated as cancelled.
pub const COEFFICIENT_DUST: f64 = 1e-14;

/// Exponents closer than this are merged into one term.
pub const EXPONENT_MERGE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coefficient: f64,
    pub exponent: f64,
}

impl Term {
    pub fn new(coefficient: f64, exponent: f64) -> Self {
        Term { coefficient, exponent }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PseudoPolynomial {
    terms: Vec<Term>,
    /// Terms removed during construction because their coefficients cancelled.
    dropped: Vec<Term>,
}

fn check_term(t: &Term) -> Result<()> {
    if !t.coefficient.is_finite() || !t.exponent.is_finite() || t.exponent < 0.0 {
        return Err(Error::domain(format!(
            "invalid term {} x^{}: exponents must be finite and nonnegative",
            t.coefficient, t.exponent
        )));
    }
    Ok(())
}

impl PseudoPolynomial {
    /// Sorts the terms, merges equal exponents and drops cancelled coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> Result<Self> {
        let mut terms: Vec<Term> = terms.into_iter().collect();
        terms.iter().try_for_each(check_term)?;
        terms.sort_by(|a, b| a.exponent.total_cmp(&b.exponent));
        let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if (t.exponent - last.exponent).abs() <= EXPONENT_MERGE => {
                    last.coefficient += t.coefficient;
                }
                _ => merged.push(t),
            }
        }
        let (kept, dropped) = merged
            .into_iter()
            .partition(|t| t.coefficient.abs() >= COEFFICIENT_DUST);
        Ok(PseudoPolynomial { terms: kept, dropped })
    }

    /// Keeps the given order, which must already be strictly increasing in
    /// the exponent; reports the first offending pair otherwise.
    pub fn from_ordered_terms(terms: Vec<Term>) -> Result<Self> {
        terms.iter().try_for_each(check_term)?;
        if let Some(i) = (1..terms.len()).find(|&i| terms[i - 1].exponent >= terms[i].exponent) {
            return Err(Error::ExponentOrder(format!(
                "term {} has exponent {} but term {} has exponent {}",
                i - 1,
                terms[i - 1].exponent,
                i,
                terms[i].exponent
            )));
        }
        let (kept, dropped) = terms
            .into_iter()
            .partition(|t| t.coefficient.abs() >= COEFFICIENT_DUST);
        Ok(PseudoPolynomial { terms: kept, dropped })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn dropped(&self) -> &[Term] {
        &self.dropped
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient signs in exponent order, as a string of `+` and `-`.
    pub fn sign_pattern(&self) -> String {
        self.terms
            .iter()
            .map(|t| if t.coefficient > 0.0 { '+' } else { '-' })
            .collect()
    }

    /// Sign alternations of the coefficient sequence: an upper bound on the
    /// number of positive roots counted with multiplicity.
    pub fn sign_changes(&self) -> usize {
        self.terms
            .windows(2)
            .filter(|w| (w[0].coefficient > 0.0) != (w[1].coefficient > 0.0))
            .count()
    }

    /// Σ c_i x^{α_i} for x ≥ 0 (with 0^0 = 1).
    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|t| t.coefficient * x.powf(t.exponent)).sum()
    }

    /// Σ |c_i| x^{α_i}, the scale against which cancellation is judged.
    pub fn magnitude(&self, x: f64) -> f64 {
        self.terms.iter().map(|t| t.coefficient.abs() * x.powf(t.exponent)).sum()
    }

    /// Strict sign changes of `eval` along a geometric grid of `grid` points
    /// on [a, b]. Values indistinguishable from zero at working precision are
    /// skipped. This is a lower bound on the number of roots in [a, b].
    pub fn count_sign_crossings(&self, a: f64, b: f64, grid: usize) -> Result<usize> {
        if !(a > 0.0 && b > a) || grid < 2 {
            return Err(Error::domain(format!(
                "sign crossings need 0 < a < b and grid >= 2, got [{a}, {b}] with {grid}"
            )));
        }
        let ratio = (b / a).ln();
        let mut last: Option<bool> = None;
        let mut crossings = 0;
        for i in 0..grid {
            let x = a * (ratio * i as f64 / (grid - 1) as f64).exp();
            let v = self.eval(x);
            if v.abs() <= 1e-13 * self.magnitude(x) {
                continue;
            }
            let positive = v > 0.0;
            if let Some(prev) = last {
                if prev != positive {
                    crossings += 1;
                }
            }
            last = Some(positive);
        }
        Ok(crossings)
    }
}

impl fmt::Display for PseudoPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let sign = if t.coefficient < 0.0 { "-" } else if i > 0 { "+" } else { "" };
            let sep = if i > 0 { " " } else { "" };
            write!(f, "{sep}{sign}{}x^{:.6}", t.coefficient.abs(), t.exponent)?;
        }
        Ok(())
    }
}

/// α_n = (n+1) log(n+1) / n.
pub fn alpha(n: u32) -> f64 {
    let n = n as f64;
    (n + 1.0) * (n + 1.0).ln() / n
}

/// β_n = log(n+1) / n.
pub fn beta(n: u32) -> f64 {
    let n = n as f64;
    (n + 1.0).ln() / n
}

/// The 14-term expansion of
/// H_{n,m} = (1−x^{α_m})(1−x^{β_m})(−1 + (n+1)/n x^{β_n} − x^{α_n}/n)
///         − (1−x^{α_n})(1−x^{β_n})(−1 + (m+1)/m x^{β_m} − x^{α_m}/m),
/// listed in the order that is increasing whenever n = m + 1.
///
/// The order is verified, never repaired: a failing comparison is reported.
pub fn build_h(n: u32, m: u32) -> Result<PseudoPolynomial> {
    if m < 1 || n <= m {
        return Err(Error::domain(format!("H_(n,m) needs n > m >= 1, got n={n}, m={m}")));
    }
    let (an, bn, am, bm) = (alpha(n), beta(n), alpha(m), beta(m));
    let chain = [
        ("beta_n", bn),
        ("beta_m", bm),
        ("beta_m+beta_n", bm + bn),
        ("alpha_m", am),
        ("alpha_n", an),
        ("beta_n+alpha_m", bn + am),
        ("alpha_m+beta_m", am + bm),
        ("alpha_n+beta_n", an + bn),
    ];
    for w in chain.windows(2) {
        if w[0].1 >= w[1].1 {
            return Err(Error::ExponentOrder(format!(
                "{} = {} is not below {} = {} for (n, m) = ({n}, {m})",
                w[0].0, w[0].1, w[1].0, w[1].1
            )));
        }
    }
    let (nf, mf) = (n as f64, m as f64);
    let terms = vec![
        Term::new(1.0 / nf, bn),
        Term::new(-1.0 / mf, bm),
        Term::new((mf + 1.0) / mf - (nf + 1.0) / nf, bm + bn),
        Term::new((mf + 1.0) / mf, am),
        Term::new(-(nf + 1.0) / nf, an),
        Term::new(-((nf + 1.0) / nf + 1.0 / mf), bn + am),
        Term::new(-1.0, am + bm),
        Term::new(1.0, an + bn),
        Term::new(1.0 / nf + (mf + 1.0) / mf, bm + an),
        Term::new((nf + 1.0) / nf, am + bm + bn),
        Term::new(-(mf + 1.0) / mf, an + bn + bm),
        Term::new(-(1.0 / mf - 1.0 / nf), am + an),
        Term::new(1.0 / mf, an + bn + am),
        Term::new(-1.0 / nf, am + bm + an),
    ];
    PseudoPolynomial::from_ordered_terms(terms)
}

/// H_{n,m} evaluated from its product form, independent of the expansion.
pub fn h_product_form(n: u32, m: u32, x: f64) -> f64 {
    let (an, bn, am, bm) = (alpha(n), beta(n), alpha(m), beta(m));
    let (nf, mf) = (n as f64, m as f64);
    (1.0 - x.powf(am)) * (1.0 - x.powf(bm)) * (-1.0 + (nf + 1.0) / nf * x.powf(bn) - x.powf(an) / nf)
        - (1.0 - x.powf(an))
            * (1.0 - x.powf(bn))
            * (-1.0 + (mf + 1.0) / mf * x.powf(bm) - x.powf(am) / mf)
}

/// −2 + 3x^{3p/2−1} − 4x + 4x^{3p/2} − 3x² + 2x^{3p/2+1}: the cleared
/// logarithmic derivative used for the four-term one-variable bound.
pub fn log_derivative_polynomial(p: f64) -> Result<PseudoPolynomial> {
    let e = 1.5 * p;
    PseudoPolynomial::from_terms([
        Term::new(-2.0, 0.0),
        Term::new(3.0, e - 1.0),
        Term::new(-4.0, 1.0),
        Term::new(4.0, e),
        Term::new(-3.0, 2.0),
        Term::new(2.0, e + 1.0),
    ])
}

/// x − x^c + 2x^{1+c} − x^p − x^q − x^{1+c+p} − x^{1+c+q} + 2x^{p+q} − x^{p+q+1} + x^{p+q+c},
/// with q = p/(p−1) and c = 1/log₂(p^{1/p} q^{1/q}).
pub fn subtle_polynomial(p: f64) -> Result<PseudoPolynomial> {
    let q = crate::exponents::conjugate(p)?;
    let c = crate::exponents::c_of_p(p)?;
    PseudoPolynomial::from_terms([
        Term::new(1.0, 1.0),
        Term::new(-1.0, c),
        Term::new(2.0, 1.0 + c),
        Term::new(-1.0, p),
        Term::new(-1.0, q),
        Term::new(-1.0, 1.0 + c + p),
        Term::new(-1.0, 1.0 + c + q),
        Term::new(2.0, p + q),
        Term::new(-1.0, p + q + 1.0),
        Term::new(1.0, p + q + c),
    ])
}
