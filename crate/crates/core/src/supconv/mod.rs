//! Sup-convolution of finitely supported functions and the functional form
//! of the sumset inequalities.
//!
//! The left-hand side Σ_z max_{x⁽¹⁾+…+x⁽ⁿ⁾=z} ∏ f_j^{p_j}(x⁽ʲ⁾) is computed as a
//! fold of pairwise sup-convolutions of the powered factors, which realizes
//! the inner maximum without enumerating n-tuples.

mod family;
mod prekopa;

use std::collections::BTreeMap;

pub use family::{
    general_lhs, general_rhs, max_product_convolution, rearrange_decreasing, six_point_gap,
    substituted_lhs, substituted_rhs, SequenceFamily,
};
pub use prekopa::{prekopa_weights, prop01_check};

use crate::error::{Error, Result};
use crate::lattice::set::check_dims;
use crate::lattice::{lp_norm, FiniteFunction, Point};

/// (f ∗̄ g)(z) = max_x f(x) g(z − x).
pub fn sup_convolution(f: &FiniteFunction, g: &FiniteFunction) -> Result<FiniteFunction> {
    check_dims(f.dim(), g.dim())?;
    let mut out: BTreeMap<Point, f64> = BTreeMap::new();
    for (x, fx) in f.iter() {
        for (y, gy) in g.iter() {
            let z = Point::from(
                x.coords().iter().zip(y.coords()).map(|(a, b)| a + b).collect::<Vec<_>>(),
            );
            let v = fx * gy;
            if v > 0.0 {
                let slot = out.entry(z).or_insert(0.0);
                if v > *slot {
                    *slot = v;
                }
            }
        }
    }
    Ok(FiniteFunction::from_map_unchecked(f.dim(), out))
}

/// f_1 ∗̄ f_2 ∗̄ ⋯ ∗̄ f_n.
pub fn sup_convolve_all(fs: &[FiniteFunction]) -> Result<FiniteFunction> {
    let (first, rest) = fs.split_first().ok_or(Error::Empty("sup-convolution of no functions"))?;
    rest.iter().try_fold(first.clone(), |acc, f| sup_convolution(&acc, f))
}

fn check_factors(fs: &[FiniteFunction], ps: &[f64]) -> Result<()> {
    if fs.is_empty() {
        return Err(Error::Empty("factor list"));
    }
    if fs.len() != ps.len() {
        return Err(Error::domain(format!(
            "{} functions but {} weights",
            fs.len(),
            ps.len()
        )));
    }
    if let Some(p) = ps.iter().find(|p| !(p.is_finite() && **p > 0.0)) {
        return Err(Error::domain(format!("weights must be positive and finite, got {p}")));
    }
    for f in &fs[1..] {
        check_dims(fs[0].dim(), f.dim())?;
    }
    Ok(())
}

/// Σ_z max_{x⁽¹⁾+…+x⁽ⁿ⁾=z} ∏_j f_j(x⁽ʲ⁾)^{p_j}.
pub fn weighted_max_sum_lhs(fs: &[FiniteFunction], ps: &[f64]) -> Result<f64> {
    check_factors(fs, ps)?;
    let powered: Vec<FiniteFunction> = fs.iter().zip(ps).map(|(f, &p)| f.powf(p)).collect();
    let conv = sup_convolve_all(&powered)?;
    Ok(conv.iter().map(|(_, v)| v).sum())
}

/// ∏_j ‖f_j‖₁^{p_j}.
pub fn weighted_rhs(fs: &[FiniteFunction], ps: &[f64]) -> Result<f64> {
    check_factors(fs, ps)?;
    fs.iter()
        .zip(ps)
        .map(|(f, &p)| Ok(lp_norm(f, 1.0)?.powf(p)))
        .product()
}

/// Sums out the last coordinate of every function: f̄(x̄) = Σ_{x̃} f(x̄, x̃).
pub fn marginalize_last(fs: &[FiniteFunction]) -> Result<Vec<FiniteFunction>> {
    fs.iter()
        .map(|f| {
            if f.dim() < 2 {
                return Err(Error::domain("cannot compress a one-dimensional function"));
            }
            let mut out: BTreeMap<Point, f64> = BTreeMap::new();
            for (x, v) in f.iter() {
                *out.entry(x.head()).or_insert(0.0) += v;
            }
            Ok(FiniteFunction::from_map_unchecked(f.dim() - 1, out))
        })
        .collect()
}

/// Marginalizes repeatedly until the functions live on ℤ. Total masses are preserved.
pub fn compress_to_1d(fs: &[FiniteFunction]) -> Result<Vec<FiniteFunction>> {
    let mut cur = marginalize_last(fs)?;
    while cur.first().is_some_and(|f| f.dim() > 1) {
        cur = marginalize_last(&cur)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::exponents::{c_of_p, conjugate, cube_upper_exponent, hypercube_exponent, q_hypercube};
    use crate::lattice::{cube, LatticeSet};
    use crate::margin::{is_violation, log_margin};
    use crate::sumset::minkowski_sum;

    fn seq(v: &[f64]) -> FiniteFunction {
        FiniteFunction::from_sequence(v).unwrap()
    }

    /// Random values on `base` with a 25% chance of zero per point; never all zero.
    fn random_on(base: &LatticeSet, rng: &mut ChaCha8Rng) -> FiniteFunction {
        loop {
            let f = FiniteFunction::from_values(
                base.dim(),
                base.iter().map(|p| {
                    let v = if rng.gen_bool(0.25) { 0.0 } else { rng.gen::<f64>() };
                    (p.clone(), v)
                }),
            )
            .unwrap();
            if !f.is_zero() {
                return f;
            }
        }
    }

    #[test]
    fn sup_convolution_examples() {
        let s = LatticeSet::from_ints([0, 2, 3]);
        let ind = FiniteFunction::indicator(&s);
        let conv = sup_convolution(&ind, &ind).unwrap();
        assert_eq!(conv, FiniteFunction::indicator(&minkowski_sum(&s, &s).unwrap()));

        let delta = 0.3;
        let f = seq(&[1.0, delta]);
        let conv = sup_convolution(&f, &f).unwrap();
        assert_eq!(conv, seq(&[1.0, delta, delta * delta]));

        let conv = sup_convolution(&seq(&[2.0]), &seq(&[3.0])).unwrap();
        assert_eq!(conv, seq(&[6.0]));
    }

    #[test]
    fn indicator_convolution_exhaustive() {
        for (m, d) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let subsets: Vec<_> = cube(m, d).unwrap().nonempty_subsets().unwrap().collect();
            let stride = if subsets.len() > 64 { 17 } else { 1 };
            for a in subsets.iter().step_by(stride) {
                for b in subsets.iter().step_by(stride) {
                    let conv =
                        sup_convolution(&FiniteFunction::indicator(a), &FiniteFunction::indicator(b))
                            .unwrap();
                    assert_eq!(conv, FiniteFunction::indicator(&minkowski_sum(a, b).unwrap()));
                }
            }
        }
    }

    #[test]
    fn weighted_sides_examples() {
        let a = LatticeSet::from_ints([0, 1, 4]);
        let b = LatticeSet::from_ints([0, 2]);
        let fs = [FiniteFunction::indicator(&a), FiniteFunction::indicator(&b)];
        let p = 0.6;
        assert_eq!(weighted_max_sum_lhs(&fs, &[p, p]).unwrap(), minkowski_sum(&a, &b).unwrap().cardinality() as f64);
        assert!((weighted_rhs(&fs, &[p, p]).unwrap() - 6f64.powf(p)).abs() < 1e-12);

        let s = cube_upper_exponent(2, 2).unwrap();
        let full = [seq(&[1.0, 1.0, 1.0]), seq(&[1.0, 1.0, 1.0])];
        assert!((weighted_max_sum_lhs(&full, &[s, s]).unwrap() - 5.0).abs() < 1e-12);
        assert!((weighted_rhs(&full, &[s, s]).unwrap() - 5.0).abs() < 1e-12);

        let f = seq(&[0.5, 1.5, 0.25]);
        assert!((weighted_max_sum_lhs(std::slice::from_ref(&f), &[1.0]).unwrap() - 2.25).abs() < 1e-15);
        assert!((weighted_rhs(&[f], &[1.0]).unwrap() - 2.25).abs() < 1e-15);
    }

    #[test]
    fn two_factor_unit_weights_equal_l1_of_supconv() {
        let f = seq(&[0.2, 0.9, 0.4]);
        let g = seq(&[0.7, 0.1]);
        let lhs = weighted_max_sum_lhs(&[f.clone(), g.clone()], &[1.0, 1.0]).unwrap();
        let direct = lp_norm(&sup_convolution(&f, &g).unwrap(), 1.0).unwrap();
        assert!((lhs - direct).abs() < 1e-15);
    }

    #[test]
    fn factor_errors() {
        let f = seq(&[1.0]);
        assert!(matches!(weighted_max_sum_lhs(&[], &[]), Err(Error::Empty(_))));
        assert!(weighted_rhs(std::slice::from_ref(&f), &[1.0, 1.0]).is_err());
        let g = FiniteFunction::indicator(&cube(1, 2).unwrap());
        assert!(matches!(
            weighted_max_sum_lhs(&[f, g], &[1.0, 1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn compression_examples() {
        let f = FiniteFunction::indicator(&cube(1, 2).unwrap());
        let out = marginalize_last(&[f]).unwrap();
        assert_eq!(out[0], seq(&[2.0, 2.0]));
        assert!(marginalize_last(&[seq(&[1.0])]).is_err());
        assert!(compress_to_1d(&[seq(&[1.0])]).is_err());
    }

    #[test]
    fn compression_preserves_mass() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in 2..=4 {
            let base = cube(2, d).unwrap();
            for _ in 0..50 {
                let f = random_on(&base, &mut rng);
                let out = compress_to_1d(std::slice::from_ref(&f)).unwrap();
                assert_eq!(out[0].dim(), 1);
                let before = lp_norm(&f, 1.0).unwrap();
                let after = lp_norm(&out[0], 1.0).unwrap();
                assert!((before - after).abs() <= 1e-12 * before.max(1.0));
            }
        }
    }

    #[test]
    fn compression_chain_on_planar_instances() {
        // When the one-dimensional inequality holds on the fibers, one
        // compression step cannot increase the left-hand side, and the
        // full inequality follows in dimension two.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cases = [
            (2usize, 1u32, hypercube_exponent(2).unwrap()),
            (3, 1, hypercube_exponent(3).unwrap()),
            (2, 2, cube_upper_exponent(2, 2).unwrap()),
        ];
        for (n, m, p) in cases {
            let base = cube(m, 2).unwrap();
            let ps = vec![p; n];
            for _ in 0..300 {
                let fs: Vec<_> = (0..n).map(|_| random_on(&base, &mut rng)).collect();
                let lhs2 = weighted_max_sum_lhs(&fs, &ps).unwrap();
                let compressed = compress_to_1d(&fs).unwrap();
                let lhs1 = weighted_max_sum_lhs(&compressed, &ps).unwrap();
                let rhs = weighted_rhs(&fs, &ps).unwrap();
                assert!(!is_violation(log_margin(lhs2, lhs1)), "n={n} m={m}");
                assert!(!is_violation(log_margin(lhs1, rhs)));
                assert!((rhs - weighted_rhs(&compressed, &ps).unwrap()).abs() <= 1e-12 * rhs);
            }
        }
    }

    #[test]
    fn two_function_inequality_on_small_cubes() {
        let q = 2.0 * 3f64.ln() / 5f64.ln();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 1..=2 {
            let base = cube(2, d).unwrap();
            for _ in 0..500 {
                let f = random_on(&base, &mut rng);
                let g = random_on(&base, &mut rng);
                let lhs = lp_norm(&sup_convolution(&f, &g).unwrap(), 1.0).unwrap();
                let rhs = lp_norm(&f, q).unwrap() * lp_norm(&g, q).unwrap();
                assert!(!is_violation(log_margin(lhs, rhs)));
            }
        }
    }

    #[test]
    fn hypercube_functional_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in 1..=4u32 {
            let q = q_hypercube(n).unwrap();
            for d in 1..=2 {
                let base = cube(1, d).unwrap();
                for _ in 0..200 {
                    let fs: Vec<_> = (0..n).map(|_| random_on(&base, &mut rng)).collect();
                    let lhs = lp_norm(&sup_convolve_all(&fs).unwrap(), 1.0).unwrap();
                    let rhs: f64 = fs.iter().map(|f| lp_norm(f, q).unwrap()).product();
                    assert!(!is_violation(log_margin(lhs, rhs)), "n={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn three_function_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let pair = LatticeSet::from_ints([0, 1]);
        for p in [1.25, 1.5, 2.0, 3.0, 5.0] {
            let q = conjugate(p).unwrap();
            let c = c_of_p(p).unwrap();
            for _ in 0..400 {
                let len_g = rng.gen_range(1..=5);
                let len_h = rng.gen_range(1..=5);
                let f = random_on(&pair, &mut rng);
                let g = random_on(&LatticeSet::from_ints(0..len_g), &mut rng);
                let h = random_on(&LatticeSet::from_ints(0..len_h), &mut rng);
                let lhs = lp_norm(&sup_convolve_all(&[f.clone(), g.clone(), h.clone()]).unwrap(), 1.0).unwrap();
                let rhs = lp_norm(&f, c).unwrap() * lp_norm(&g, p).unwrap() * lp_norm(&h, q).unwrap();
                assert!(!is_violation(log_margin(lhs, rhs)), "p={p}");
            }
        }
    }
}
