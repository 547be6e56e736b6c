//! Grid and random-sample checks of the one- and two-variable inequalities.
//!
//! Every check reports a log-margin ln(LHS) − ln(RHS); a lemma passes when
//! the smallest margin seen is at least `-EQUALITY_TOL`. Margins are
//! floating-point evidence, not certificates.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::functions::{ln_f_big, ln_g, ln_geometric_sum, ln_prefix_product_sum};
use crate::error::{Error, Result};
use crate::exponents::{c_of_p, conjugate, cube_upper_exponent, r_of_n};
use crate::margin::{log_add_exp, EQUALITY_TOL};
use crate::verify::REPORT_VERSION;

/// Points per axis for one-variable grids.
pub const DEFAULT_POINTS: usize = 10_000;
/// Points per axis for two-variable grids.
pub const DEFAULT_POINTS_2D: usize = 1_000;
/// Random tuples per n for the sampled lemmas.
pub const DEFAULT_DRAWS: usize = 100_000;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_SIMPLEX_STEP: f64 = 0.01;
pub const SUBTLE_DEFAULT_PS: [f64; 5] = [1.1, 1.3, 2.0, 4.0, 10.0];

/// Zoom levels of the local refinement around a grid minimum. Each level
/// resamples the bracket around the current minimum at three times the
/// previous density.
const REFINE_LEVELS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LemmaId {
    #[serde(rename = "key-lemma-1")]
    KeyLemma1,
    #[serde(rename = "key-lemma-2")]
    KeyLemma2,
    #[serde(rename = "increasing-ratio")]
    IncreasingRatio,
    #[serde(rename = "main-F")]
    MainF,
    #[serde(rename = "1var")]
    OneVar,
    #[serde(rename = "2var")]
    TwoVar,
    #[serde(rename = "key-thm1")]
    KeyThm1,
    #[serde(rename = "subtle")]
    Subtle,
    #[serde(rename = "six-point")]
    SixPoint,
}

impl LemmaId {
    pub const ALL: [LemmaId; 9] = [
        LemmaId::KeyLemma1,
        LemmaId::KeyLemma2,
        LemmaId::IncreasingRatio,
        LemmaId::MainF,
        LemmaId::OneVar,
        LemmaId::TwoVar,
        LemmaId::KeyThm1,
        LemmaId::Subtle,
        LemmaId::SixPoint,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaId::KeyLemma1 => "key-lemma-1",
            LemmaId::KeyLemma2 => "key-lemma-2",
            LemmaId::IncreasingRatio => "increasing-ratio",
            LemmaId::MainF => "main-F",
            LemmaId::OneVar => "1var",
            LemmaId::TwoVar => "2var",
            LemmaId::KeyThm1 => "key-thm1",
            LemmaId::Subtle => "subtle",
            LemmaId::SixPoint => "six-point",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

/// Grid density: a point count per axis, or a spacing for [0, 1] axes.
///
/// A spacing h gives unit intervals round(1/h) + 1 points, and every other
/// axis the same number of points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Grid {
    Points(usize),
    Step(f64),
}

impl Grid {
    fn points(self) -> Result<usize> {
        match self {
            Grid::Points(n) if n >= 2 => Ok(n),
            Grid::Step(h) if h > 0.0 && h <= 0.5 => Ok((1.0 / h).round() as usize + 1),
            other => Err(Error::domain(format!("invalid grid {other:?}"))),
        }
    }
}

impl FromStr for Grid {
    type Err = Error;

    /// Integers are point counts, anything else is a spacing.
    fn from_str(s: &str) -> Result<Self> {
        if let Ok(n) = s.parse::<usize>() {
            return Ok(Grid::Points(n));
        }
        s.parse::<f64>()
            .map(Grid::Step)
            .map_err(|_| Error::Parse(format!("grid must be a point count or a step, got {s:?}")))
    }
}

/// Overrides for the per-lemma defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LemmaConfig {
    pub grid: Option<Grid>,
    pub n_max: Option<u32>,
    pub p: Option<f64>,
    pub draws: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaCase {
    pub label: String,
    pub min_margin: f64,
    pub argmin: Vec<f64>,
    pub points: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub version: String,
    pub lemma: String,
    pub grid: String,
    pub seed: Option<u64>,
    pub pass: bool,
    pub min_margin: f64,
    pub argmin_case: String,
    pub argmin: Vec<f64>,
    pub points: u64,
    pub cases: Vec<LemmaCase>,
}

impl LemmaReport {
    fn assemble(id: LemmaId, grid: String, seed: Option<u64>, cases: Vec<LemmaCase>) -> Self {
        let worst = cases
            .iter()
            .min_by(|a, b| a.min_margin.total_cmp(&b.min_margin))
            .expect("every lemma has at least one case");
        LemmaReport {
            version: REPORT_VERSION.to_string(),
            lemma: id.to_string(),
            grid,
            seed,
            pass: worst.min_margin >= -EQUALITY_TOL,
            min_margin: worst.min_margin,
            argmin_case: worst.label.clone(),
            argmin: worst.argmin.clone(),
            points: cases.iter().map(|c| c.points).sum(),
            cases,
        }
    }
}

pub fn check_lemma(id: LemmaId, config: &LemmaConfig) -> Result<LemmaReport> {
    match id {
        LemmaId::KeyLemma1 => key_lemma_1(config),
        LemmaId::KeyLemma2 => key_lemma_2(config),
        LemmaId::IncreasingRatio => increasing_ratio(config),
        LemmaId::MainF => main_f(config),
        LemmaId::OneVar => one_var(config),
        LemmaId::TwoVar => two_var(config),
        LemmaId::KeyThm1 => key_thm1(config),
        LemmaId::Subtle => subtle(config),
        LemmaId::SixPoint => six_point(config),
    }
}

/// Runs `check_lemma` on a lemma given by name.
pub fn check_lemma_by_name(name: &str, config: &LemmaConfig) -> Result<LemmaReport> {
    check_lemma(name.parse()?, config)
}

// ---- grids and scans ----

pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

pub fn geometric_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    let (la, lb) = (a.ln(), b.ln());
    (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn sanitize(m: f64) -> f64 {
    if m.is_nan() {
        f64::NEG_INFINITY
    } else {
        m
    }
}

fn lower(a: (f64, usize), b: (f64, usize)) -> (f64, usize) {
    match a.0.total_cmp(&b.0) {
        std::cmp::Ordering::Less => a,
        std::cmp::Ordering::Greater => b,
        std::cmp::Ordering::Equal => {
            if a.1 <= b.1 {
                a
            } else {
                b
            }
        }
    }
}

/// Smallest margin over indices 0..count, ties to the lowest index.
fn min_index(count: usize, margin: impl Fn(usize) -> f64 + Sync) -> (f64, usize) {
    (0..count)
        .into_par_iter()
        .map(|i| (sanitize(margin(i)), i))
        .reduce(|| (f64::INFINITY, usize::MAX), lower)
}

/// Scans a sorted grid, then zooms in on the minimum.
fn scan_1d(xs: &[f64], f: impl Fn(f64) -> f64 + Sync) -> (f64, f64, u64) {
    let (mut best, i) = min_index(xs.len(), |i| f(xs[i]));
    let mut arg = xs[i];
    let mut points = xs.len() as u64;
    let mut lo = xs[i.saturating_sub(1)];
    let mut hi = xs[(i + 1).min(xs.len() - 1)];
    for _ in 0..REFINE_LEVELS {
        if hi <= lo {
            break;
        }
        let sub = uniform_grid(lo, hi, 7);
        let (m, j) = min_index(sub.len(), |k| f(sub[k]));
        points += sub.len() as u64;
        if m < best {
            best = m;
            arg = sub[j];
        }
        let half = (hi - lo) / 6.0;
        lo = (arg - half).max(lo);
        hi = (arg + half).min(hi);
    }
    (best, arg, points)
}

/// Scans the product grid us × vs restricted to `valid`, then zooms in.
/// `margin` sees the parameters (u, v); reported coordinates are `coords(u, v)`.
fn scan_2d(
    us: &[f64],
    vs: &[f64],
    valid: impl Fn(f64, f64) -> bool + Sync,
    margin: impl Fn(f64, f64) -> f64 + Sync,
) -> (f64, (f64, f64), u64) {
    let nv = vs.len();
    let (mut best, idx) = min_index(us.len() * nv, |k| {
        let (u, v) = (us[k / nv], vs[k % nv]);
        if valid(u, v) {
            margin(u, v)
        } else {
            f64::INFINITY
        }
    });
    let (iu, iv) = (idx / nv, idx % nv);
    let mut arg = (us[iu], vs[iv]);
    let mut points = us.len() as u64 * nv as u64;
    let mut ubox = (us[iu.saturating_sub(1)], us[(iu + 1).min(us.len() - 1)]);
    let mut vbox = (vs[iv.saturating_sub(1)], vs[(iv + 1).min(nv - 1)]);
    for _ in 0..REFINE_LEVELS {
        let su = uniform_grid(ubox.0, ubox.1, 7);
        let sv = uniform_grid(vbox.0, vbox.1, 7);
        let (m, k) = min_index(49, |k| {
            let (u, v) = (su[k / 7], sv[k % 7]);
            if valid(u, v) {
                margin(u, v)
            } else {
                f64::INFINITY
            }
        });
        points += 49;
        if m < best {
            best = m;
            arg = (su[k / 7], sv[k % 7]);
        }
        let (hu, hv) = ((ubox.1 - ubox.0) / 6.0, (vbox.1 - vbox.0) / 6.0);
        ubox = ((arg.0 - hu).max(ubox.0), (arg.0 + hu).min(ubox.1));
        vbox = ((arg.1 - hv).max(vbox.0), (arg.1 + hv).min(vbox.1));
    }
    (best, arg, points)
}

fn case(label: String, (min_margin, argmin, points): (f64, Vec<f64>, u64)) -> LemmaCase {
    LemmaCase { label, min_margin, argmin, points }
}

fn one_d_case(label: String, xs: &[f64], f: impl Fn(f64) -> f64 + Sync) -> LemmaCase {
    let (m, x, pts) = scan_1d(xs, f);
    case(label, (m, vec![x], pts))
}

/// Merges cases computed over several regions into one.
fn merge_cases(label: String, parts: Vec<LemmaCase>) -> LemmaCase {
    let points = parts.iter().map(|c| c.points).sum();
    let worst = parts
        .into_iter()
        .min_by(|a, b| a.min_margin.total_cmp(&b.min_margin))
        .expect("at least one region");
    LemmaCase { label, points, ..worst }
}

fn grid_label(config: &LemmaConfig, default: usize) -> Result<(usize, String)> {
    let n = match config.grid {
        Some(g) => g.points()?,
        None => default,
    };
    Ok((n, format!("{n} points per axis")))
}

fn default_p(config: &LemmaConfig) -> Result<f64> {
    match config.p {
        Some(p) => Ok(p),
        None => cube_upper_exponent(2, 2),
    }
}

/// ln(1 + w^a) for w ≥ 0.
fn ln_one_plus_pow(w: f64, a: f64) -> f64 {
    log_add_exp(0.0, a * w.ln())
}

// ---- random monotone tuples ----

/// i.i.d. draws sorted into nonincreasing order. A tenth of the entries are
/// exactly 0 and another tenth exactly 1, the rest log-uniform on [1e-3, 1e3].
fn monotone_tuple(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n)
        .map(|_| {
            let u: f64 = rng.gen();
            if u < 0.1 {
                0.0
            } else if u < 0.2 {
                1.0
            } else {
                10f64.powf(rng.gen_range(-3.0..3.0))
            }
        })
        .collect();
    w.sort_by(|a, b| b.total_cmp(a));
    w
}

fn sampled_cases(
    config: &LemmaConfig,
    default_n_max: u32,
    margin: impl Fn(&[f64]) -> f64 + Sync,
) -> Result<(Vec<LemmaCase>, u64, usize)> {
    let n_max = config.n_max.unwrap_or(default_n_max);
    let draws = config.draws.unwrap_or(DEFAULT_DRAWS);
    let seed = config.seed.unwrap_or(DEFAULT_SEED);
    if n_max < 1 || draws < 1 {
        return Err(Error::domain("sampled lemmas need n_max >= 1 and draws >= 1"));
    }
    let cases = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(n as u64);
            let ones = vec![1.0; n as usize];
            let mut best = (sanitize(margin(&ones)), ones);
            for _ in 0..draws {
                let w = monotone_tuple(&mut rng, n as usize);
                let m = sanitize(margin(&w));
                if m < best.0 {
                    best = (m, w);
                }
            }
            case(format!("n={n}"), (best.0, best.1, draws as u64 + 1))
        })
        .collect();
    Ok((cases, seed, draws))
}

// ---- the lemmas ----

fn key_lemma_1(config: &LemmaConfig) -> Result<LemmaReport> {
    let (cases, seed, draws) = sampled_cases(config, 5, |w| {
        let n = w.len() as u32;
        n as f64 * ln_prefix_product_sum(w) - w.iter().map(|&x| ln_geometric_sum(x, n)).sum::<f64>()
    })?;
    let grid = format!("{draws} sorted random tuples per n");
    Ok(LemmaReport::assemble(LemmaId::KeyLemma1, grid, Some(seed), cases))
}

fn key_thm1(config: &LemmaConfig) -> Result<LemmaReport> {
    let (cases, seed, draws) = sampled_cases(config, 5, |w| {
        let n = w.len() as u32;
        let r = r_of_n(n).expect("n >= 1");
        let a = n as f64 / r;
        ln_prefix_product_sum(w) - w.iter().map(|&x| ln_one_plus_pow(x, a)).sum::<f64>() / a
    })?;
    let grid = format!("{draws} sorted random tuples per n");
    Ok(LemmaReport::assemble(LemmaId::KeyThm1, grid, Some(seed), cases))
}

fn key_lemma_2(config: &LemmaConfig) -> Result<LemmaReport> {
    let (points, label) = grid_label(config, DEFAULT_POINTS)?;
    let mut ws = geometric_grid(1e-3, 1e3, points);
    ws.insert(0, 0.0);
    let n_max = config.n_max.unwrap_or(10);
    let cases = (1..=n_max)
        .map(|n| {
            let r = r_of_n(n)?;
            let a = n as f64 / r;
            Ok(one_d_case(format!("n={n}"), &ws, |w| {
                ln_geometric_sum(w, n) - r * ln_one_plus_pow(w, a)
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let grid = format!("{{0}} and geometric [1e-3, 1e3], {label}");
    Ok(LemmaReport::assemble(LemmaId::KeyLemma2, grid, None, cases))
}

fn increasing_ratio(config: &LemmaConfig) -> Result<LemmaReport> {
    let (points, label) = grid_label(config, DEFAULT_POINTS)?;
    let n_max = config.n_max.unwrap_or(8);
    if n_max < 2 {
        return Err(Error::domain("increasing-ratio needs n_max >= 2"));
    }
    let inner = uniform_grid(0.0, 1.0, points);
    let outer = geometric_grid(1.0, 1e3, points);
    let both = geometric_grid(1e-3, 1e3, points);
    let mut cases = Vec::new();
    for n in 2..=n_max {
        let g = |w: f64| ln_g(n, w);
        let steps = |xs: &[f64], sign: f64| {
            let (m, i) = min_index(xs.len() - 1, |i| sign * (g(xs[i + 1]) - g(xs[i])));
            (m, vec![xs[i], xs[i + 1]], xs.len() as u64)
        };
        cases.push(case(format!("n={n} increasing on [0,1]"), steps(&inner, 1.0)));
        cases.push(case(format!("n={n} decreasing on [1,1e3]"), steps(&outer, -1.0)));
        let (m, i) = min_index(both.len(), |i| -(g(both[i]) - g(1.0 / both[i])).abs());
        cases.push(case(format!("n={n} symmetry"), (m, vec![both[i]], both.len() as u64)));
    }
    let grid = format!("uniform [0,1] and geometric [1,1e3], {label}");
    Ok(LemmaReport::assemble(LemmaId::IncreasingRatio, grid, None, cases))
}

fn main_f(config: &LemmaConfig) -> Result<LemmaReport> {
    let (points, label) = grid_label(config, DEFAULT_POINTS)?;
    let n_max = config.n_max.unwrap_or(6);
    let near = uniform_grid(0.0, 10.0, points);
    let far = geometric_grid(1e-4, 1e4, points);
    let mut cases = Vec::new();
    for n in 2..=n_max {
        for m in 1..n {
            let f = |x: f64| ln_f_big(n, x) - ln_f_big(m, x);
            let parts = vec![
                one_d_case(String::new(), &near, f),
                one_d_case(String::new(), &far, f),
            ];
            cases.push(merge_cases(format!("n={n} m={m}"), parts));
        }
    }
    let grid = format!("uniform [0,10] and geometric [1e-4,1e4], {label}");
    Ok(LemmaReport::assemble(LemmaId::MainF, grid, None, cases))
}

fn one_var(config: &LemmaConfig) -> Result<LemmaReport> {
    let (points, label) = grid_label(config, DEFAULT_POINTS)?;
    let p = default_p(config)?;
    let mut xs = geometric_grid(1e-4, 1e4, points);
    xs.insert(0, 0.0);
    let xp = |x: f64| if x == 0.0 { 0.0 } else { x.powf(p) };
    let ln_quad = |x: f64| (1.0 + x + x * x).ln();
    let cases = vec![
        one_d_case("m0".into(), &xs, |x| xp(x).ln_1p() - p * x.ln_1p()),
        one_d_case("m1".into(), &xs, |x| {
            ln_geometric_sum(xp(x), 2) - 2.0 * p * x.ln_1p()
        }),
        one_d_case("m2".into(), &xs, |x| {
            ln_geometric_sum(xp(x), 4) - 2.0 * p * ln_quad(x)
        }),
        one_d_case("m2b".into(), &xs, |x| {
            ln_geometric_sum(xp(x), 3) - p * x.ln_1p() - p * ln_quad(x)
        }),
        one_d_case("m2b-sharper on [0,0.1]".into(), &uniform_grid(0.0, 0.1, points), |x| {
            xp(x).ln_1p() - p * x.ln_1p() - p * ln_quad(x)
        }),
        one_d_case("bound01 on [0.1,1]".into(), &uniform_grid(0.1, 1.0, points), |x| {
            2.0 * x.powf(1.5 * p).ln_1p() - p * x.ln_1p() - p * ln_quad(x)
        }),
    ];
    let grid = format!("{{0}} and geometric [1e-4,1e4], uniform [0,0.1] and [0.1,1], {label}; p={p}");
    Ok(LemmaReport::assemble(LemmaId::OneVar, grid, None, cases))
}

fn two_var(config: &LemmaConfig) -> Result<LemmaReport> {
    let (points, label) = grid_label(config, DEFAULT_POINTS_2D)?;
    let p = default_p(config)?;
    let pw = |v: f64| if v == 0.0 { 0.0 } else { v.powf(p) };
    type Ineq = fn(f64, f64, f64, f64, f64) -> f64;
    // Arguments: x, y, x^p, y^p, p.
    let ineqs: [(&str, Ineq); 3] = [
        ("xeqy1", |x, y, a, b, p| {
            (1.0 + b + b * b + a * b * b + a * a * b * b).ln() - 2.0 * p * (1.0 + y + x * y).ln()
        }),
        ("xeqy2", |x, y, a, b, p| {
            (1.0 + a + a * b + a * a * b + a * a * b * b).ln() - 2.0 * p * (1.0 + x + x * y).ln()
        }),
        ("xneqy", |x, y, a, b, p| {
            (1.0 + b + a * b + a * b * b + a * a * b * b).ln()
                - p * (1.0 + x + x * y).ln()
                - p * (1.0 + y + x * y).ln()
        }),
    ];
    let unit = uniform_grid(0.0, 1.0, points);
    let logs = uniform_grid(0.0, 1e3f64.ln(), points);
    let mut cases = Vec::new();
    for (name, ineq) in ineqs {
        // 0 ≤ x ≤ y ≤ 1 on a square grid.
        let (m1, (x1, y1), n1) = scan_2d(
            &unit,
            &unit,
            |x, y| x <= y,
            |x, y| ineq(x, y, pw(x), pw(y), p),
        );
        // y ∈ [1, 1e3] geometric, x = t·y with t ∈ [0, 1].
        let (m2, (t2, l2), n2) = scan_2d(
            &unit,
            &logs,
            |_, _| true,
            |t, l| {
                let y = l.exp();
                let x = t * y;
                ineq(x, y, pw(x), pw(y), p)
            },
        );
        let parts = vec![
            case(String::new(), (m1, vec![x1, y1], n1)),
            case(String::new(), (m2, vec![t2 * l2.exp(), l2.exp()], n2)),
        ];
        cases.push(merge_cases(name.to_string(), parts));
    }
    let grid = format!("0<=x<=y<=1 uniform and y in [1,1e3] geometric with x=t*y, {label}; p={p}");
    Ok(LemmaReport::assemble(LemmaId::TwoVar, grid, None, cases))
}

fn subtle(config: &LemmaConfig) -> Result<LemmaReport> {
    let (points, label) = grid_label(config, DEFAULT_POINTS)?;
    let ps: Vec<f64> = match config.p {
        Some(p) => vec![p],
        None => SUBTLE_DEFAULT_PS.to_vec(),
    };
    // x = 1 is a removable 0/0; the grid stops at the one-sided point 1 − 1e-6.
    let xs = uniform_grid(0.0, 1.0 - 1e-6, points);
    let cases = ps
        .iter()
        .map(|&p| {
            let q = conjugate(p)?;
            let c = c_of_p(p)?;
            let ln_one_minus_pow = |x: f64, e: f64| (-(e * x.ln()).exp_m1()).ln();
            Ok(one_d_case(format!("p={p}"), &xs, |x| {
                ln_one_minus_pow(x, p) / p + ln_one_minus_pow(x, q) / q
                    - (-x).ln_1p()
                    - (c * x.ln()).exp().ln_1p() / c
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let grid = format!("uniform [0, 1-1e-6], {label}");
    Ok(LemmaReport::assemble(LemmaId::Subtle, grid, None, cases))
}

fn six_point(config: &LemmaConfig) -> Result<LemmaReport> {
    let p = default_p(config)?;
    let divisions = match config.grid {
        None => (1.0 / DEFAULT_SIMPLEX_STEP).round() as usize,
        Some(g) => g.points()? - 1,
    };
    // Both triples are normalized to sum 1, so the right side is 1.
    let simplex: Vec<[f64; 3]> = (0..=divisions)
        .flat_map(|i| (0..=divisions - i).map(move |j| (i, j)))
        .map(|(i, j)| {
            let k = divisions - i - j;
            [i, j, k].map(|t| t as f64 / divisions as f64)
        })
        .collect();
    let powered: Vec<[f64; 3]> = simplex
        .iter()
        .map(|v| v.map(|t| if t == 0.0 { 0.0 } else { t.powf(p) }))
        .collect();
    let s = powered.len();
    let (m, idx) = min_index(s * s, |k| {
        let (x, y) = (&powered[k / s], &powered[k % s]);
        let lhs = x[0] * y[0]
            + (x[0] * y[1]).max(x[1] * y[0])
            + (x[0] * y[2]).max(x[1] * y[1]).max(x[2] * y[0])
            + (x[1] * y[2]).max(x[2] * y[1])
            + x[2] * y[2];
        lhs.ln()
    });
    let (x, y) = (simplex[idx / s], simplex[idx % s]);
    let argmin = x.iter().chain(y.iter()).copied().collect();
    let cases = vec![case(format!("p={p}"), (m, argmin, (s * s) as u64))];
    let grid = format!("simplex step 1/{divisions} for x and y");
    Ok(LemmaReport::assemble(LemmaId::SixPoint, grid, None, cases))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supconv::six_point_gap;

    fn small() -> LemmaConfig {
        LemmaConfig { grid: Some(Grid::Points(400)), draws: Some(2000), ..Default::default() }
    }

    #[test]
    fn ids_round_trip() {
        for id in LemmaId::ALL {
            assert_eq!(id.as_str().parse::<LemmaId>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{}\"", id.as_str()));
        }
        assert!(matches!("nope".parse::<LemmaId>(), Err(Error::UnknownId(_))));
    }

    #[test]
    fn grid_parsing() {
        assert_eq!("1000".parse::<Grid>().unwrap(), Grid::Points(1000));
        assert_eq!("0.005".parse::<Grid>().unwrap(), Grid::Step(0.005));
        assert_eq!(Grid::Step(0.005).points().unwrap(), 201);
        assert!("abc".parse::<Grid>().is_err());
        assert!(Grid::Points(1).points().is_err());
    }

    #[test]
    fn all_lemmas_pass_on_small_grids() {
        for id in LemmaId::ALL {
            let cfg = if id == LemmaId::SixPoint { LemmaConfig { grid: Some(Grid::Step(0.05)), ..Default::default() } } else { small() };
            let r = check_lemma(id, &cfg).unwrap();
            assert!(r.pass, "{id}: {r:?}");
            assert!(r.min_margin.is_finite());
        }
    }

    #[test]
    fn key_lemma_2_touches_zero_at_one() {
        let cfg = LemmaConfig { n_max: Some(3), ..Default::default() };
        let r = check_lemma(LemmaId::KeyLemma2, &cfg).unwrap();
        let n3 = r.cases.iter().find(|c| c.label == "n=3").unwrap();
        assert!(n3.min_margin >= 0.0 || n3.min_margin > -1e-12);
        assert!(n3.min_margin < 1e-6);
        let r = r_of_n(3).unwrap();
        let at_one = ln_geometric_sum(1.0, 3) - r * ln_one_plus_pow(1.0, 3.0 / r);
        assert!(at_one.abs() < 1e-14);
    }

    #[test]
    fn subtle_identity_at_two() {
        let cfg = LemmaConfig { p: Some(2.0), ..Default::default() };
        let r = check_lemma(LemmaId::Subtle, &cfg).unwrap();
        assert!(r.pass);
        assert!(r.min_margin.abs() < 1e-9, "{}", r.min_margin);
    }

    #[test]
    fn subtle_limit_at_one() {
        for p in SUBTLE_DEFAULT_PS {
            let cfg = LemmaConfig { p: Some(p), grid: Some(Grid::Points(2)), ..Default::default() };
            let r = check_lemma(LemmaId::Subtle, &cfg).unwrap();
            assert!(r.min_margin.abs() < 1e-4, "p={p}: {}", r.min_margin);
        }
    }

    #[test]
    fn main_f_touch_points() {
        let xs = uniform_grid(0.0, 10.0, 10_000);
        let touches: Vec<f64> = xs
            .iter()
            .copied()
            .filter(|&x| (ln_f_big(2, x) - ln_f_big(1, x)).abs() <= EQUALITY_TOL)
            .collect();
        assert!(!touches.is_empty());
        assert!(touches.iter().all(|&x| x < 2e-3 || (x - 1.0).abs() < 2e-3), "{touches:?}");
        assert!(xs.iter().all(|&x| ln_f_big(2, x) - ln_f_big(1, x) >= -EQUALITY_TOL));
    }

    #[test]
    fn f_chain() {
        for x in geometric_grid(1e-4, 1e4, 2000) {
            for n in 1..6 {
                assert!(ln_f_big(n + 1, x) - ln_f_big(n, x) >= -EQUALITY_TOL);
            }
        }
    }

    #[test]
    fn two_var_example_step() {
        let cfg = LemmaConfig { grid: Some(Grid::Step(0.005)), ..Default::default() };
        let r = check_lemma(LemmaId::TwoVar, &cfg).unwrap();
        let xneqy = r.cases.iter().find(|c| c.label == "xneqy").unwrap();
        assert!(xneqy.min_margin >= -EQUALITY_TOL);
    }

    #[test]
    fn six_point_agrees_with_gap() {
        let p = cube_upper_exponent(2, 2).unwrap();
        let cfg = LemmaConfig { grid: Some(Grid::Step(0.1)), ..Default::default() };
        let r = check_lemma(LemmaId::SixPoint, &cfg).unwrap();
        let a = &r.argmin;
        let gap = six_point_gap([a[0], a[1], a[2]], [a[3], a[4], a[5]], p);
        assert!((gap - r.min_margin.exp_m1()).abs() < 1e-12);
        // The all-equal point is an equality case.
        assert!(six_point_gap([1.0; 3], [1.0; 3], p).abs() < 1e-12 * 9.0);
    }

    #[test]
    fn sampled_lemmas_are_deterministic() {
        let a = check_lemma(LemmaId::KeyLemma1, &small()).unwrap();
        let b = check_lemma(LemmaId::KeyLemma1, &small()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.seed, Some(DEFAULT_SEED));
    }

    #[test]
    fn refinement_finds_offgrid_minimum() {
        let xs = uniform_grid(0.0, 1.0, 11);
        let (m, x, _) = scan_1d(&xs, |x| (x - 0.537).powi(2));
        assert!(m < 1e-6 && (x - 0.537).abs() < 1e-3);
    }
}
