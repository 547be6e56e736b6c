//! Exhaustive and randomized verification campaigns, one per statement.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{CampaignReport, Tally};
use super::runner::{instance_rng, DenseBox};
use super::sampling::{pick_probability, random_mask, random_subset, sampling_box, DEFAULT_BOX};
use crate::error::{Error, Result};
use crate::exponents::{
    c_of_p, conjugate, cube_upper_exponent, dilate_exponent, energy_cube_exponent,
    energy_doubling_exponent, hypercube_exponent,
};
use crate::lattice::packed::{packed_sum, PackedGrid};
use crate::lattice::set::subset_for_mask;
use crate::lattice::{cube, LatticeSet};
use crate::sumset::{additive_energy, dilated_sum, iterated_sum, minkowski_sum};

/// Largest cube (in cells) whose subsets are enumerated exhaustively.
pub const EXHAUSTIVE_CELLS: usize = 12;

/// Largest number of tuples an exhaustive campaign will visit.
pub const EXHAUSTIVE_TUPLES: u128 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    Random { count: u64, seed: u64 },
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Random { .. } => "random",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Mode::Exhaustive => None,
            Mode::Random { seed, .. } => Some(*seed),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statement {
    TwoSets,
    NFold,
    ThreeSets,
    CubeContaining,
    KSumCube,
    Energy,
    Dilate,
}

impl Statement {
    pub const ALL: [Statement; 7] = [
        Statement::TwoSets,
        Statement::NFold,
        Statement::ThreeSets,
        Statement::CubeContaining,
        Statement::KSumCube,
        Statement::Energy,
        Statement::Dilate,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Statement::TwoSets => "two-sets",
            Statement::NFold => "n-fold",
            Statement::ThreeSets => "three-sets",
            Statement::CubeContaining => "cube-containing",
            Statement::KSumCube => "k-sum-cube",
            Statement::Energy => "energy",
            Statement::Dilate => "dilate",
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Statement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Statement::ALL
            .into_iter()
            .find(|st| st.as_str() == s)
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

/// Everything a campaign needs; unset fields take per-statement defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub statement: Statement,
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub d: usize,
    pub k: Option<u32>,
    pub p: Option<f64>,
    pub mode: Mode,
    /// Largest coordinate of the sampling box for unbounded statements.
    pub box_max: Option<u32>,
}

impl CampaignConfig {
    pub fn new(statement: Statement, d: usize, mode: Mode) -> Self {
        CampaignConfig { statement, n: None, m: None, d, k: None, p: None, mode, box_max: None }
    }
}

pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport> {
    let d = cfg.d;
    match cfg.statement {
        Statement::TwoSets => verify_two_sets(cfg.m.unwrap_or(2), d, cfg.p, cfg.mode),
        Statement::NFold => verify_n_fold_hypercube(cfg.n.unwrap_or(2), d, cfg.p, cfg.mode),
        Statement::ThreeSets => {
            verify_three_sets(d, cfg.p.unwrap_or(2.0), cfg.mode, cfg.box_max.unwrap_or(DEFAULT_BOX))
        }
        Statement::CubeContaining => verify_cube_containing(
            cfg.k.unwrap_or(2),
            d,
            cfg.mode,
            cfg.box_max.unwrap_or(DEFAULT_BOX),
        ),
        Statement::KSumCube => verify_klein_sum_with_cube(
            cfg.k.unwrap_or(2),
            d,
            cfg.mode,
            cfg.box_max.unwrap_or(DEFAULT_BOX),
        ),
        Statement::Energy => verify_energy_bounds(cfg.k.unwrap_or(2), d, cfg.mode),
        Statement::Dilate => verify_dilate_bound(d, cfg.mode),
    }
}

fn params(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn check_dim(d: usize) -> Result<()> {
    if d == 0 {
        Err(Error::ZeroDimension)
    } else {
        Ok(())
    }
}

/// Runs `body` over `0..total` in parallel chunks; the first error aborts.
fn try_run(total: u64, body: impl Fn(u64, &mut Tally) -> Result<()> + Sync) -> Result<Tally> {
    const CHUNK: u64 = 256;
    (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut tally = Tally::default();
            for i in c * CHUNK..((c + 1) * CHUNK).min(total) {
                body(i, &mut tally)?;
            }
            Ok(tally)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
}

/// Tuples of nonempty masks over `cells` positions, in mixed radix 2^cells − 1.
struct TupleSpace {
    radix: u64,
    arity: usize,
    total: u64,
}

impl TupleSpace {
    fn new(cells: usize, arity: usize) -> Result<Self> {
        if cells > EXHAUSTIVE_CELLS {
            return Err(Error::InstanceTooLarge {
                what: "cells of the exhaustive base cube",
                actual: cells as u128,
                limit: EXHAUSTIVE_CELLS as u128,
            });
        }
        let radix = (1u64 << cells) - 1;
        let total = (radix as u128).checked_pow(arity as u32).unwrap_or(u128::MAX);
        if total > EXHAUSTIVE_TUPLES {
            return Err(Error::InstanceTooLarge {
                what: "exhaustive tuples",
                actual: total,
                limit: EXHAUSTIVE_TUPLES,
            });
        }
        Ok(TupleSpace { radix, arity, total: total as u64 })
    }

    fn masks(&self, mut index: u64) -> Vec<u64> {
        (0..self.arity)
            .map(|_| {
                let m = index % self.radix + 1;
                index /= self.radix;
                m
            })
            .collect()
    }
}

fn ln(x: usize) -> f64 {
    (x as f64).ln()
}

// ---- sums of subsets of a cube ----

/// Subsets of cube(m, d) as bitmasks over its sorted points, with a fast
/// sumset-size kernel for `terms`-fold sums.
pub(crate) struct CubeSpace {
    pub base: LatticeSet,
    kernel: Kernel,
}

enum Kernel {
    Packed(Vec<u32>),
    Dense(DenseBox, Vec<usize>),
}

impl CubeSpace {
    pub fn new(m: u32, d: usize, terms: u32) -> Result<Self> {
        check_dim(d)?;
        let base = cube(m, d)?;
        if base.cardinality() > 64 {
            return Err(Error::InstanceTooLarge {
                what: "cube cells for mask-based campaigns",
                actual: base.cardinality() as u128,
                limit: 64,
            });
        }
        let side = m.checked_mul(terms).and_then(|s| s.checked_add(1)).ok_or(Error::CountOverflow)?;
        let kernel = match PackedGrid::new(side, d) {
            Ok(grid) => Kernel::Packed(
                base.iter().map(|p| grid.index(p.coords()).expect("cube fits its sum grid")).collect(),
            ),
            Err(_) => {
                let boxed = DenseBox::new(side as usize, d)?;
                let cells = boxed.indices(&base);
                Kernel::Dense(boxed, cells)
            }
        };
        Ok(CubeSpace { base, kernel })
    }

    pub fn cells(&self) -> usize {
        self.base.cardinality()
    }

    pub fn full_mask(&self) -> u64 {
        if self.cells() == 64 {
            u64::MAX
        } else {
            (1u64 << self.cells()) - 1
        }
    }

    pub fn sets(&self, masks: &[u64]) -> Vec<LatticeSet> {
        masks.iter().map(|&m| subset_for_mask(&self.base, m)).collect()
    }

    /// |Σ_j S_j| where S_j is the subset selected by `masks[j]`.
    pub fn sum_size(&self, masks: &[u64]) -> usize {
        match &self.kernel {
            Kernel::Packed(cell) => {
                let embed = |mask: u64| {
                    let mut bits = 0u128;
                    let mut rest = mask;
                    while rest != 0 {
                        bits |= 1u128 << cell[rest.trailing_zeros() as usize];
                        rest &= rest - 1;
                    }
                    bits
                };
                let mut acc = embed(masks[0]);
                for &m in &masks[1..] {
                    acc = packed_sum(acc, embed(m));
                }
                acc.count_ones() as usize
            }
            Kernel::Dense(boxed, cell) => {
                let idx: Vec<Vec<usize>> = masks
                    .iter()
                    .map(|&m| (0..cell.len()).filter(|&i| m >> i & 1 == 1).map(|i| cell[i]).collect())
                    .collect();
                let refs: Vec<&[usize]> = idx.iter().map(Vec::as_slice).collect();
                boxed.sum_size(&refs)
            }
        }
    }

    /// ln|ΣS_j| − p Σ ln|S_j|.
    pub fn margin(&self, masks: &[u64], p: f64) -> f64 {
        let lhs = ln(self.sum_size(masks));
        let rhs: f64 = masks.iter().map(|m| ln(m.count_ones() as usize)).sum();
        lhs - p * rhs
    }
}

fn cube_sum_campaign(
    statement: Statement,
    n: u32,
    m: u32,
    d: usize,
    p: f64,
    mode: Mode,
    note: Option<String>,
) -> Result<CampaignReport> {
    let start = Instant::now();
    if n < 1 || m < 1 {
        return Err(Error::domain("cube-sum campaigns need n >= 1 and m >= 1"));
    }
    let space = CubeSpace::new(m, d, n)?;
    let arity = n as usize;
    let full = vec![space.full_mask(); arity];
    let mut tally = match mode {
        Mode::Exhaustive => {
            let tuples = TupleSpace::new(space.cells(), arity)?;
            try_run(tuples.total, |i, t| {
                let masks = tuples.masks(i);
                t.record(i, space.margin(&masks, p), || space.sets(&masks));
                Ok(())
            })?
        }
        Mode::Random { count, seed } => try_run(count, |i, t| {
            let mut rng = instance_rng(seed, i);
            let prob = pick_probability(&mut rng);
            let masks: Vec<u64> =
                (0..arity).map(|_| random_mask(&mut rng, space.cells(), prob)).collect();
            t.record(i, space.margin(&masks, p), || space.sets(&masks));
            Ok(())
        })?,
    };
    let full_index = match mode {
        Mode::Exhaustive => TupleSpace::new(space.cells(), arity)?.total - 1,
        Mode::Random { .. } => u64::MAX,
    };
    tally.record_side("full-cube", false, full_index, space.margin(&full, p), || space.sets(&full));
    let ps = params(&[("n", n as f64), ("m", m as f64), ("d", d as f64), ("p", p)]);
    Ok(CampaignReport::from_tally(
        statement.as_str(),
        ps,
        mode.name(),
        mode.seed(),
        note,
        tally,
        elapsed_ms(start),
    ))
}

/// |A+B| ≥ (|A||B|)^p for nonempty A, B ⊆ {0,…,m}^d; p defaults to
/// log(2m+1)/(2 log(m+1)).
pub fn verify_two_sets(m: u32, d: usize, p: Option<f64>, mode: Mode) -> Result<CampaignReport> {
    let note = (m >= 3).then(|| {
        format!(
            "conjecture: for m = {m} the exponent log(2m+1)/(2log(m+1)) is only an upper bound \
             for the sharp exponent; this campaign gathers evidence, violations would refute the conjecture"
        )
    });
    let p = match p {
        Some(p) => p,
        None => cube_upper_exponent(2, m)?,
    };
    cube_sum_campaign(Statement::TwoSets, 2, m, d, p, mode, note)
}

/// |A_1+…+A_n| ≥ (∏|A_j|)^p for nonempty A_j ⊆ {0,1}^d; p defaults to log₂(n+1)/n.
pub fn verify_n_fold_hypercube(n: u32, d: usize, p: Option<f64>, mode: Mode) -> Result<CampaignReport> {
    let p = match p {
        Some(p) => p,
        None => hypercube_exponent(n)?,
    };
    cube_sum_campaign(Statement::NFold, n, 1, d, p, mode, None)
}

// ---- three sets ----

/// Log-margins of one three-set instance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThreeSetMargins {
    /// |V+A+B| ≥ |V|^{1/c}|A|^{1/p}|B|^{1/q}.
    pub sharp: f64,
    /// |V+A+B| ≥ (p^{1/p}q^{1/q}/2)^d |V||A|^{1/p}|B|^{1/q}.
    pub weak: f64,
}

pub fn three_set_margins(
    d: usize,
    p: f64,
    sum: usize,
    v: usize,
    a: usize,
    b: usize,
) -> Result<ThreeSetMargins> {
    let q = conjugate(p)?;
    let c = c_of_p(p)?;
    let lhs = ln(sum);
    let common = ln(a) / p + ln(b) / q;
    let factor = d as f64 * ((p.ln() / p + q.ln() / q) - 2f64.ln());
    Ok(ThreeSetMargins { sharp: lhs - ln(v) / c - common, weak: lhs - factor - ln(v) - common })
}

pub fn verify_three_sets(d: usize, p: f64, mode: Mode, box_max: u32) -> Result<CampaignReport> {
    let start = Instant::now();
    check_dim(d)?;
    let (count, seed) = match mode {
        Mode::Random { count, seed } => (count, seed),
        Mode::Exhaustive => {
            return Err(Error::domain("three-sets draws A and B from a box; use random mode"))
        }
    };
    let q = conjugate(p)?;
    let c = c_of_p(p)?;
    let hyper = cube(1, d)?;
    let area = sampling_box(box_max, d)?;
    let boxed = DenseBox::new(2 * box_max as usize + 2, d)?;
    let hyper_idx = boxed.indices(&hyper);
    let tally = try_run(count, |i, t| {
        let mut rng = instance_rng(seed, i);
        let prob = pick_probability(&mut rng);
        let v = random_subset(&mut rng, &hyper, prob);
        let a = random_subset(&mut rng, &area, prob);
        let b = random_subset(&mut rng, &area, prob);
        let (vi, ai, bi) = (boxed.indices(&v), boxed.indices(&a), boxed.indices(&b));
        let sum = boxed.sum_size(&[&ai, &bi, &vi]);
        let mg = three_set_margins(d, p, sum, v.cardinality(), a.cardinality(), b.cardinality())?;
        let sets = || vec![v.clone(), a.clone(), b.clone()];
        t.record(i, mg.sharp, sets);
        t.record_side("weak-exponent", true, i, mg.weak, sets);
        t.record_side("implication", true, i, mg.weak - mg.sharp, sets);
        // Brunn–Minkowski specialization with V the full cube.
        let full = if v.cardinality() == hyper.cardinality() {
            sum
        } else {
            boxed.sum_size(&[&ai, &bi, &hyper_idx])
        };
        let dd = d as f64;
        let rhs = (ln(a.cardinality()) / dd).exp() + (ln(b.cardinality()) / dd).exp();
        t.record_side("brunn-minkowski", true, i, ln(full) / dd - rhs.ln(), || {
            vec![hyper.clone(), a.clone(), b.clone()]
        });
        Ok(())
    })?;
    let ps = params(&[("d", d as f64), ("p", p), ("q", q), ("c", c), ("box", box_max as f64)]);
    Ok(CampaignReport::from_tally(
        Statement::ThreeSets.as_str(),
        ps,
        mode.name(),
        mode.seed(),
        None,
        tally,
        elapsed_ms(start),
    ))
}

// ---- sets containing a cube ----

/// Checks |kA|·k^d = (k²−k+1)^d·|A| for A = {0,…,k−1}^d in exact integers.
pub fn cube_witness_exact(k: u32, d: usize) -> Result<bool> {
    let a = cube(k - 1, d)?;
    let ka = iterated_sum(&a, k)?.cardinality() as u128;
    let (k, d) = (k as u128, d as u32);
    let lhs = ka.checked_mul(k.pow(d)).ok_or(Error::CountOverflow)?;
    let rhs = (k * k - k + 1).pow(d).checked_mul(a.cardinality() as u128).ok_or(Error::CountOverflow)?;
    Ok(lhs == rhs)
}

/// |kA|/|A| ≥ k^{d(k−1)/k} for finite A containing {0,…,k−1}^d.
pub fn verify_cube_containing(k: u32, d: usize, mode: Mode, box_max: u32) -> Result<CampaignReport> {
    let start = Instant::now();
    check_dim(d)?;
    if k < 2 {
        return Err(Error::domain("cube-containing needs k >= 2"));
    }
    let core = cube(k - 1, d)?;
    let exponent = d as f64 * (k - 1) as f64 / k as f64 * (k as f64).ln();
    let ln_cube_ratio = d as f64 * (((k * k - k + 1) as f64).ln() - (k as f64).ln());
    let eval = |a: &LatticeSet, boxed: &DenseBox| {
        let idx = boxed.indices(a);
        let refs: Vec<&[usize]> = (0..k).map(|_| idx.as_slice()).collect();
        let ratio = ln(boxed.sum_size(&refs)) - ln(a.cardinality());
        (ratio - exponent, ratio - ln_cube_ratio)
    };
    let (tally, box_max) = match mode {
        Mode::Exhaustive => {
            // Supersets of the cube inside {0,…,k}^d.
            let outer = cube(k, d)?;
            let extras: Vec<_> = outer.iter().filter(|p| !core.contains(p)).cloned().collect();
            if extras.len() > 16 {
                return Err(Error::InstanceTooLarge {
                    what: "extra cells for exhaustive supersets",
                    actual: extras.len() as u128,
                    limit: 16,
                });
            }
            let extra_set = LatticeSet::from_points(d, extras)?;
            let boxed = DenseBox::for_sum(k as u64, k as u64, d)?;
            let tally = try_run(1u64 << extra_set.cardinality(), |i, t| {
                let a = core.union(&subset_for_mask(&extra_set, i))?;
                let (m, beat) = eval(&a, &boxed);
                t.record(i, m, || vec![a.clone()]);
                t.record_side("beats-cube", false, i, beat, || vec![a.clone()]);
                Ok(())
            })?;
            (tally, k)
        }
        Mode::Random { count, seed } => {
            let box_max = box_max.max(k - 1);
            let area = sampling_box(box_max, d)?;
            let boxed = DenseBox::for_sum(box_max as u64, k as u64, d)?;
            let tally = try_run(count, |i, t| {
                let mut rng = instance_rng(seed, i);
                let prob = pick_probability(&mut rng);
                let a = core.union(&random_subset(&mut rng, &area, prob))?;
                let (m, beat) = eval(&a, &boxed);
                t.record(i, m, || vec![a.clone()]);
                t.record_side("beats-cube", false, i, beat, || vec![a.clone()]);
                Ok(())
            })?;
            (tally, box_max)
        }
    };
    let mut tally = tally;
    // 0 on exact equality, −1 otherwise.
    let exact = if cube_witness_exact(k, d)? { 0.0 } else { -1.0 };
    tally.record_side("cube-witness-exact", true, 0, exact, || vec![core.clone()]);
    let ps = params(&[("k", k as f64), ("d", d as f64), ("box", box_max as f64)]);
    Ok(CampaignReport::from_tally(
        Statement::CubeContaining.as_str(),
        ps,
        mode.name(),
        mode.seed(),
        None,
        tally,
        elapsed_ms(start),
    ))
}

// ---- k sets plus a cube ----

/// |A_1+…+A_k+U| ≥ |U| ∏|A_i|^{1/k} with U = {0,…,k−1}^d.
pub fn verify_klein_sum_with_cube(k: u32, d: usize, mode: Mode, box_max: u32) -> Result<CampaignReport> {
    let start = Instant::now();
    check_dim(d)?;
    if k < 2 {
        return Err(Error::domain("k-sum-cube needs k >= 2"));
    }
    let u = cube(k - 1, d)?;
    let arity = k as usize;
    let margin = |sets: &[LatticeSet], boxed: &DenseBox| {
        let mut idx: Vec<Vec<usize>> = sets.iter().map(|s| boxed.indices(s)).collect();
        idx.push(boxed.indices(&u));
        let refs: Vec<&[usize]> = idx.iter().map(Vec::as_slice).collect();
        let rhs: f64 = sets.iter().map(|s| ln(s.cardinality())).sum::<f64>() / k as f64;
        ln(boxed.sum_size(&refs)) - ln(u.cardinality()) - rhs
    };
    let (mut tally, boxed, box_max) = match mode {
        Mode::Exhaustive => {
            let tuples = TupleSpace::new(u.cardinality(), arity)?;
            let boxed = DenseBox::for_sum((k - 1) as u64, k as u64 + 1, d)?;
            let tally = try_run(tuples.total, |i, t| {
                let sets: Vec<LatticeSet> =
                    tuples.masks(i).iter().map(|&m| subset_for_mask(&u, m)).collect();
                t.record(i, margin(&sets, &boxed), || sets.clone());
                Ok(())
            })?;
            (tally, boxed, k - 1)
        }
        Mode::Random { count, seed } => {
            let area = sampling_box(box_max, d)?;
            let boxed = DenseBox::for_sum(box_max.max(k - 1) as u64, k as u64 + 1, d)?;
            let tally = try_run(count, |i, t| {
                let mut rng = instance_rng(seed, i);
                let prob = pick_probability(&mut rng);
                let sets: Vec<LatticeSet> =
                    (0..arity).map(|_| random_subset(&mut rng, &area, prob)).collect();
                t.record(i, margin(&sets, &boxed), || sets.clone());
                Ok(())
            })?;
            (tally, boxed, box_max)
        }
    };
    let all_u = vec![u.clone(); arity];
    let eq = margin(&all_u, &boxed);
    tally.record_side("equality-witness", true, 0, -eq.abs(), || all_u.clone());
    let ps = params(&[("k", k as f64), ("d", d as f64), ("box", box_max as f64)]);
    Ok(CampaignReport::from_tally(
        Statement::KSumCube.as_str(),
        ps,
        mode.name(),
        mode.seed(),
        None,
        tally,
        elapsed_ms(start),
    ))
}

// ---- energy and dilates over subsets of {0,1}^d ----

/// Subsets of {0,1}^d: every nonempty one, or `count` random ones.
fn hypercube_subsets(
    d: usize,
    mode: Mode,
    body: impl Fn(u64, &LatticeSet, &mut Tally) -> Result<()> + Sync,
) -> Result<Tally> {
    check_dim(d)?;
    let base = cube(1, d)?;
    match mode {
        Mode::Exhaustive => {
            let tuples = TupleSpace::new(base.cardinality(), 1)?;
            try_run(tuples.total, |i, t| body(i, &subset_for_mask(&base, i + 1), t))
        }
        Mode::Random { count, seed } => try_run(count, |i, t| {
            let mut rng = instance_rng(seed, i);
            let prob = pick_probability(&mut rng);
            body(i, &random_subset(&mut rng, &base, prob), t)
        }),
    }
}

/// Ordered quadruples (a, b, c, e) ∈ A⁴ with a + b = c + e, by direct enumeration.
pub fn brute_force_energy(a: &LatticeSet) -> u128 {
    let pts = a.points();
    let mut count = 0u128;
    for x in pts {
        for y in pts {
            let s: Vec<i64> = x.coords().iter().zip(y.coords()).map(|(u, v)| u + v).collect();
            for z in pts {
                for w in pts {
                    if z.coords().iter().zip(w.coords()).zip(&s).all(|((u, v), t)| u + v == *t) {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// E_k(A) ≤ |A|^{log₂C(2k,k)} and E_k(A) ≤ (|kA|/|A|)^{log_{(k+1)/2}C(2k,k)}.
pub fn verify_energy_bounds(k: u32, d: usize, mode: Mode) -> Result<CampaignReport> {
    let start = Instant::now();
    let size_exp = energy_cube_exponent(k)?;
    let doubling_exp = energy_doubling_exponent(k)?;
    let full = cube(1, d)?;
    let margins = |a: &LatticeSet| -> Result<(f64, f64, u128)> {
        let e = additive_energy(a, k)?;
        let ka = iterated_sum(a, k)?.cardinality();
        let ln_e = (e as f64).ln();
        Ok((
            size_exp * ln(a.cardinality()) - ln_e,
            doubling_exp * (ln(ka) - ln(a.cardinality())) - ln_e,
            e,
        ))
    };
    let brute = k == 2 && d <= 2;
    let mut tally = hypercube_subsets(d, mode, |i, a, t| {
        let (size, doubling, e) = margins(a)?;
        let sets = || vec![a.clone()];
        t.record(i, size.min(doubling), sets);
        t.record_side("size-bound", true, i, size, sets);
        t.record_side("doubling-bound", true, i, doubling, sets);
        if brute {
            let m = if brute_force_energy(a) == e { 0.0 } else { -1.0 };
            t.record_side("brute-force-energy", true, i, m, sets);
        }
        Ok(())
    })?;
    let (size, doubling, _) = margins(&full)?;
    tally.record_side("full-cube", false, u64::MAX, size.min(doubling), || vec![full.clone()]);
    let ps = params(&[
        ("k", k as f64),
        ("d", d as f64),
        ("size_exponent", size_exp),
        ("doubling_exponent", doubling_exp),
    ]);
    Ok(CampaignReport::from_tally(
        Statement::Energy.as_str(),
        ps,
        mode.name(),
        mode.seed(),
        None,
        tally,
        elapsed_ms(start),
    ))
}

/// |A+2·A| ≤ (|A+A|/|A|)^{log_{3/2}2} |A|.
pub fn verify_dilate_bound(d: usize, mode: Mode) -> Result<CampaignReport> {
    let start = Instant::now();
    let p = dilate_exponent();
    let full = cube(1, d)?;
    let margins = |a: &LatticeSet| -> Result<(f64, f64)> {
        let doubled = minkowski_sum(a, a)?.cardinality();
        let dilate = dilated_sum(a, 2, a)?.cardinality();
        let n = a.cardinality();
        Ok((p * (ln(doubled) - ln(n)) + ln(n) - ln(dilate), 2.0 * ln(n) - ln(dilate)))
    };
    let mut tally = hypercube_subsets(d, mode, |i, a, t| {
        let (main, trivial) = margins(a)?;
        t.record(i, main, || vec![a.clone()]);
        t.record_side("trivial-bound", true, i, trivial, || vec![a.clone()]);
        Ok(())
    })?;
    let (main, _) = margins(&full)?;
    tally.record_side("full-cube", false, u64::MAX, main, || vec![full.clone()]);
    let ps = params(&[("d", d as f64), ("p", p)]);
    Ok(CampaignReport::from_tally(
        Statement::Dilate.as_str(),
        ps,
        mode.name(),
        mode.seed(),
        None,
        tally,
        elapsed_ms(start),
    ))
}
