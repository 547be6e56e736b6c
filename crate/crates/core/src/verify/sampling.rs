//! Random instances. Each instance draws one inclusion probability and uses
//! it for all of its sets, so both sparse and dense regimes are covered.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::lattice::{cube, LatticeSet};
use crate::Result;

pub const INCLUSION_PROBABILITIES: [f64; 4] = [0.1, 0.3, 0.5, 0.8];

/// Default largest coordinate of the sampling box [0, B]^d.
pub const DEFAULT_BOX: u32 = 8;

pub fn pick_probability(rng: &mut ChaCha8Rng) -> f64 {
    *INCLUSION_PROBABILITIES.choose(rng).expect("nonempty")
}

/// Nonempty random subset of `base`: each point kept with probability `prob`;
/// an empty draw is replaced by one uniformly chosen point.
pub fn random_subset(rng: &mut ChaCha8Rng, base: &LatticeSet, prob: f64) -> LatticeSet {
    let pts: Vec<_> = base.iter().filter(|_| rng.gen_bool(prob)).cloned().collect();
    let pts = if pts.is_empty() {
        vec![base.points()[rng.gen_range(0..base.cardinality())].clone()]
    } else {
        pts
    };
    LatticeSet::from_points(base.dim(), pts).expect("points come from a set of this dimension")
}

/// Nonempty random bitmask over `cells` positions (cells ≤ 64).
pub fn random_mask(rng: &mut ChaCha8Rng, cells: usize, prob: f64) -> u64 {
    let mask = (0..cells).fold(0u64, |m, i| if rng.gen_bool(prob) { m | 1 << i } else { m });
    if mask == 0 {
        1 << rng.gen_range(0..cells)
    } else {
        mask
    }
}

/// The box [0, max_coord]^d.
pub fn sampling_box(max_coord: u32, d: usize) -> Result<LatticeSet> {
    cube(max_coord, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::runner::instance_rng;

    #[test]
    fn subsets_are_nonempty_and_inside() {
        let base = sampling_box(3, 2).unwrap();
        for i in 0..200 {
            let mut rng = instance_rng(3, i);
            let p = pick_probability(&mut rng);
            let s = random_subset(&mut rng, &base, p);
            assert!(!s.is_empty() && s.is_subset(&base));
            let m = random_mask(&mut rng, 9, 0.1);
            assert!(m != 0 && m < 1 << 9);
        }
    }
}
