//! The geometric-sum family P_n and functions built from it.

use crate::margin::log_sum_exp;

/// ln(1 + x + … + x^n) for x ≥ 0, without overflow for large x.
pub fn ln_geometric_sum(x: f64, n: u32) -> f64 {
    if x <= 1.0 {
        // Horner; every partial sum is in [1, n+1].
        let mut s = 1.0;
        for _ in 0..n {
            s = 1.0 + x * s;
        }
        s.ln()
    } else {
        n as f64 * x.ln() + ln_geometric_sum(1.0 / x, n)
    }
}

/// ln F_n(x), with F_n(x) = P_n(x^{β_n})^{1/ln(n+1)} and β_n = ln(n+1)/n.
pub fn ln_f_big(n: u32, x: f64) -> f64 {
    let l = (n as f64 + 1.0).ln();
    let y = if x == 0.0 { 0.0 } else { (x.ln() * l / n as f64).exp() };
    ln_geometric_sum(y, n) / l
}

/// F_n(x) for x ≥ 0.
pub fn f_big(n: u32, x: f64) -> f64 {
    ln_f_big(n, x).exp()
}

/// ln f_k(w), with f_k(w) = (1 + w + … + w^k)^{1/k}.
pub fn ln_f_small(k: u32, w: f64) -> f64 {
    ln_geometric_sum(w, k) / k as f64
}

/// ln g_n(w), with g_n = f_{n−1}/f_n (n ≥ 2).
pub fn ln_g(n: u32, w: f64) -> f64 {
    ln_f_small(n - 1, w) - ln_f_small(n, w)
}

/// ln(1 + w_1 + w_1 w_2 + … + w_1⋯w_n) for nonnegative w.
pub fn ln_prefix_product_sum(w: &[f64]) -> f64 {
    let mut acc = 0.0;
    let mut logs = Vec::with_capacity(w.len() + 1);
    logs.push(0.0);
    for &wi in w {
        acc += wi.ln();
        logs.push(acc);
    }
    log_sum_exp(logs)
}
