//! Tolerance discipline shared by every inequality check.
//!
//! Inequalities are compared as log-margins log(LHS) − log(RHS); zero sides
//! are resolved exactly before taking logarithms.

/// A margin below `-EQUALITY_TOL` is a violation; |margin| ≤ `EQUALITY_TOL` is equality.
pub const EQUALITY_TOL: f64 = 1e-9;

/// Margins with |margin| ≤ `NEAR_EQUALITY` are reported as near-equality cases.
pub const NEAR_EQUALITY: f64 = 1e-6;

/// log(lhs) − log(rhs) for nonnegative sides.
pub fn log_margin(lhs: f64, rhs: f64) -> f64 {
    debug_assert!(lhs >= 0.0 && rhs >= 0.0, "log_margin({lhs}, {rhs})");
    match (lhs == 0.0, rhs == 0.0) {
        (true, true) => 0.0,
        (false, true) => f64::INFINITY,
        (true, false) => f64::NEG_INFINITY,
        (false, false) => lhs.ln() - rhs.ln(),
    }
}

pub fn is_violation(margin: f64) -> bool {
    margin < -EQUALITY_TOL || margin.is_nan()
}

pub fn is_equality(margin: f64) -> bool {
    margin.abs() <= EQUALITY_TOL
}

pub fn is_near_equality(margin: f64) -> bool {
    margin.abs() <= NEAR_EQUALITY
}

/// ln(e^a + e^b) without overflow.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// ln Σ e^{x_i}.
pub fn log_sum_exp(xs: impl IntoIterator<Item = f64>) -> f64 {
    let xs: Vec<f64> = xs.into_iter().collect();
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi == f64::NEG_INFINITY || hi.is_infinite() {
        return hi;
    }
    hi + xs.iter().map(|x| (x - hi).exp()).sum::<f64>().ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_sides() {
        assert_eq!(log_margin(0.0, 0.0), 0.0);
        assert_eq!(log_margin(1.0, 0.0), f64::INFINITY);
        assert!(is_violation(log_margin(0.0, 1.0)));
        assert!(is_equality(log_margin(5.0, 5.0)));
    }

    #[test]
    fn log_sums() {
        assert!((log_add_exp(0.0, 0.0) - 2f64.ln()).abs() < 1e-15);
        assert!((log_add_exp(1000.0, 1000.0) - (1000.0 + 2f64.ln())).abs() < 1e-12);
        assert_eq!(log_add_exp(f64::NEG_INFINITY, 3.0), 3.0);
        assert!((log_sum_exp([0.0, 0.0, 0.0]) - 3f64.ln()).abs() < 1e-15);
        assert_eq!(log_sum_exp([]), f64::NEG_INFINITY);
    }
}
