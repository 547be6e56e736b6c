//! Local search for tuples of cube subsets with small log-margin.
//!
//! Moves add, remove or relocate one point of one set (sets stay nonempty).
//! Each descent takes the best strictly improving move until none is left.
//! Restart 0 starts from the full cubes, later restarts from random tuples.
//! The result is the best local minimum found, not a global optimum.

use std::time::Instant;

use rayon::prelude::*;

use super::campaigns::CubeSpace;
use super::report::{CampaignReport, Tally};
use super::runner::instance_rng;
use super::sampling::{pick_probability, random_mask};
use crate::error::{Error, Result};

/// Improvements smaller than this do not count as progress.
const MIN_IMPROVEMENT: f64 = 1e-13;

/// Upper bound on descent steps per restart.
const MAX_STEPS: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub struct Descent {
    pub masks: Vec<u64>,
    pub margin: f64,
    pub steps: usize,
    pub evaluations: u64,
}

fn neighbours(masks: &[u64], cells: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for (j, &m) in masks.iter().enumerate() {
        for i in 0..cells {
            let bit = 1u64 << i;
            let toggled = m ^ bit;
            if toggled != 0 {
                let mut next = masks.to_vec();
                next[j] = toggled;
                out.push(next);
            }
            if m & bit != 0 {
                for t in 0..cells {
                    let target = 1u64 << t;
                    if m & target == 0 {
                        let mut next = masks.to_vec();
                        next[j] = (m & !bit) | target;
                        out.push(next);
                    }
                }
            }
        }
    }
    out
}

fn descend(space: &CubeSpace, start: Vec<u64>, p: f64) -> Descent {
    let cells = space.cells();
    let mut masks = start;
    let mut margin = space.margin(&masks, p);
    let mut evaluations = 1u64;
    let mut steps = 0;
    while steps < MAX_STEPS {
        let candidates = neighbours(&masks, cells);
        evaluations += candidates.len() as u64;
        let best = candidates
            .into_iter()
            .map(|c| (space.margin(&c, p), c))
            .min_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        match best {
            Some((m, c)) if m < margin - MIN_IMPROVEMENT => {
                margin = m;
                masks = c;
                steps += 1;
            }
            _ => break,
        }
    }
    Descent { masks, margin, steps, evaluations }
}

/// Minimizes ln|A_1+…+A_n| − p Σ ln|A_j| over nonempty A_j ⊆ {0,…,m}^d with
/// `budget` descents. Each descent's local minimum is one report instance.
pub fn search_min_ratio(n: u32, m: u32, d: usize, p: f64, budget: u64, seed: u64) -> Result<CampaignReport> {
    let start = Instant::now();
    if budget == 0 {
        return Err(Error::domain("search budget must be at least one restart"));
    }
    if n < 1 || m < 1 {
        return Err(Error::domain("search needs n >= 1 and m >= 1"));
    }
    let space = CubeSpace::new(m, d, n)?;
    let cells = space.cells();
    let descents: Vec<(u64, Descent)> = (0..budget)
        .into_par_iter()
        .map(|r| {
            let start = if r == 0 {
                vec![space.full_mask(); n as usize]
            } else {
                let mut rng = instance_rng(seed, r);
                let prob = pick_probability(&mut rng);
                (0..n).map(|_| random_mask(&mut rng, cells, prob)).collect()
            };
            (r, descend(&space, start, p))
        })
        .collect();
    let mut tally = Tally::default();
    let mut evaluations = 0u64;
    for (r, dsc) in &descents {
        evaluations += dsc.evaluations;
        tally.record(*r, dsc.margin, || space.sets(&dsc.masks));
    }
    let params = [
        ("n", n as f64),
        ("m", m as f64),
        ("d", d as f64),
        ("p", p),
        ("budget", budget as f64),
        ("evaluations", evaluations as f64),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    Ok(CampaignReport::from_tally(
        "search",
        params,
        "local-search",
        Some(seed),
        Some("best local minimum found; not a proof of global optimality".to_string()),
        tally,
        start.elapsed().as_millis() as u64,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponents::cube_upper_exponent;
    use crate::lattice::cube;
    use crate::margin::EQUALITY_TOL;

    #[test]
    fn sharp_exponent_finds_zero_at_full_cubes() {
        let p = cube_upper_exponent(2, 2).unwrap();
        let r = search_min_ratio(2, 2, 1, p, 4, 3).unwrap();
        assert!(r.min_log_margin.unwrap() >= -EQUALITY_TOL);
        assert!(r.min_log_margin.unwrap() <= EQUALITY_TOL);
        assert_eq!(r.violations, 0);
    }

    #[test]
    fn raised_exponent_is_refuted() {
        let p = cube_upper_exponent(2, 1).unwrap() + 0.01;
        let r = search_min_ratio(2, 1, 2, p, 1, 3).unwrap();
        assert!(r.min_log_margin.unwrap() < -EQUALITY_TOL);
        assert!(r.violations >= 1);
        let full = cube(1, 2).unwrap();
        assert_eq!(r.argmin.unwrap().lattice_sets().unwrap(), vec![full.clone(), full]);
    }

    #[test]
    fn budget_contract() {
        assert!(search_min_ratio(2, 2, 1, 0.7, 0, 1).is_err());
        let r = search_min_ratio(2, 2, 1, 0.7, 1, 1).unwrap();
        assert_eq!(r.instances, 1);
    }

    #[test]
    fn neighbourhood_keeps_sets_nonempty() {
        for nb in neighbours(&[0b1, 0b101], 3) {
            assert!(nb.iter().all(|&m| m != 0 && m < 8));
        }
    }
}
