//! Bracketing root finder used for implicitly defined constants.

use crate::error::{Error, Result};

pub const MAX_BISECTION_STEPS: u32 = 200;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub value: f64,
    /// Half-width of the final bracket.
    pub half_width: f64,
    pub iterations: u32,
}

/// Bisection on `[lo, hi]`; the residual must change sign on the bracket.
///
/// Stops when the bracket no longer shrinks in floating point, when its
/// half-width drops below `tol`, or after [`MAX_BISECTION_STEPS`] steps.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<Root> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(Root { value: lo, half_width: 0.0, iterations: 0 });
    }
    if fhi == 0.0 {
        return Ok(Root { value: hi, half_width: 0.0, iterations: 0 });
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(Error::NoBracket { lo, hi });
    }
    let mut iterations = 0;
    while iterations < MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || 0.5 * (hi - lo) <= tol {
            break;
        }
        iterations += 1;
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(Root { value: mid, half_width: 0.0, iterations });
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(Root { value: 0.5 * (lo + hi), half_width: 0.5 * (hi - lo), iterations })
}

/// Expands `[lo, hi]` to the right by doubling its width until the residual
/// changes sign, giving up after `max_doublings`.
pub fn find_bracket(
    f: impl Fn(f64) -> f64,
    lo: f64,
    mut hi: f64,
    max_doublings: u32,
) -> Result<(f64, f64)> {
    let flo = f(lo);
    for _ in 0..=max_doublings {
        if f(hi).signum() != flo.signum() {
            return Ok((lo, hi));
        }
        hi = lo + 2.0 * (hi - lo);
    }
    Err(Error::NoBracket { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 0.0).unwrap();
        assert!((r.value - 2f64.sqrt()).abs() < 1e-15);
        assert!(r.iterations <= MAX_BISECTION_STEPS);
    }

    #[test]
    fn endpoint_roots_and_missing_bracket() {
        assert_eq!(bisect(|x| x, 0.0, 1.0, 0.0).unwrap().value, 0.0);
        assert!(matches!(bisect(|x| x * x + 1.0, -1.0, 1.0, 0.0), Err(Error::NoBracket { .. })));
    }

    #[test]
    fn bracket_scan() {
        let (lo, hi) = find_bracket(|x| x - 37.0, 0.0, 1.0, 10).unwrap();
        assert!(lo < 37.0 && hi >= 37.0);
        assert!(find_bracket(|_| 1.0, 0.0, 1.0, 5).is_err());
    }
}
