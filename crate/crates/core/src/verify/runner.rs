//! Chunked parallel execution and the sumset-size kernels used by campaigns.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::Tally;
use crate::error::{Error, Result};
use crate::lattice::LatticeSet;

/// Instances per parallel work item. Reports do not depend on this.
const CHUNK: u64 = 512;

/// Runs `body` for every index in `0..total`, in parallel chunks, and merges
/// the per-chunk tallies.
pub fn run_indexed(total: u64, body: impl Fn(u64, &mut Tally) + Sync) -> Tally {
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut tally = Tally::default();
            for i in c * CHUNK..((c + 1) * CHUNK).min(total) {
                body(i, &mut tally);
            }
            tally
        })
        .reduce(Tally::default, Tally::merge)
}

/// Independent generator for instance `index` of a campaign seeded with `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Bitset over the cells of a box {0,…,side−1}^dim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub fn zeros(cells: usize) -> Self {
        Bits { words: vec![0; cells.div_ceil(64)] }
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// self |= src << shift (bits shifted past the end are lost).
    pub fn or_shifted(&mut self, src: &Bits, shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        let n = self.words.len();
        for (i, &w) in src.words.iter().enumerate() {
            if w == 0 || i + ws >= n {
                continue;
            }
            self.words[i + ws] |= w << bs;
            if bs != 0 && i + ws + 1 < n {
                self.words[i + ws + 1] |= w >> (64 - bs);
            }
        }
    }
}

/// Index map x ↦ Σ x_i side^i on a box large enough to hold a whole sum.
#[derive(Clone, Debug)]
pub struct DenseBox {
    side: usize,
    dim: usize,
    cells: usize,
}

/// Largest box a dense sum may allocate.
const DENSE_CELLS: usize = 1 << 26;

impl DenseBox {
    pub fn new(side: usize, dim: usize) -> Result<Self> {
        let cells = (side as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        if cells > DENSE_CELLS as u128 {
            return Err(Error::InstanceTooLarge {
                what: "dense sum box cells",
                actual: cells,
                limit: DENSE_CELLS as u128,
            });
        }
        Ok(DenseBox { side, dim, cells: cells as usize })
    }

    /// Box for sums of `terms` sets with coordinates in [0, max_coord].
    pub fn for_sum(max_coord: u64, terms: u64, dim: usize) -> Result<Self> {
        let side = max_coord
            .checked_mul(terms)
            .and_then(|s| s.checked_add(1))
            .ok_or(Error::CountOverflow)?;
        DenseBox::new(side as usize, dim)
    }

    pub fn index(&self, coords: &[i64]) -> usize {
        debug_assert_eq!(coords.len(), self.dim);
        coords.iter().rev().fold(0, |acc, &c| {
            debug_assert!(c >= 0 && (c as usize) < self.side);
            acc * self.side + c as usize
        })
    }

    pub fn indices(&self, set: &LatticeSet) -> Vec<usize> {
        set.iter().map(|p| self.index(p.coords())).collect()
    }

    /// |S_1 + … + S_r| for sets given by their cell indices. Every partial
    /// sum must stay inside the box.
    pub fn sum_size(&self, sets: &[&[usize]]) -> usize {
        let Some((first, rest)) = sets.split_first() else {
            return 0;
        };
        let mut acc = Bits::zeros(self.cells);
        first.iter().for_each(|&i| acc.set(i));
        for s in rest {
            let mut next = Bits::zeros(self.cells);
            for &i in s.iter() {
                next.or_shifted(&acc, i);
            }
            acc = next;
        }
        acc.count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::cube;
    use crate::sumset::sum_all;

    #[test]
    fn chunked_run_counts_everything() {
        let t = run_indexed(2000, |i, t| t.record(i, i as f64, Vec::new));
        assert_eq!(t.instances, 2000);
        assert_eq!(t.argmin.unwrap().index, 0);
        assert_eq!(run_indexed(0, |_, _| unreachable!()).instances, 0);
    }

    #[test]
    fn or_shifted_crosses_words() {
        let mut src = Bits::zeros(200);
        src.set(0);
        src.set(63);
        let mut dst = Bits::zeros(200);
        dst.or_shifted(&src, 70);
        assert_eq!(dst.count(), 2);
        assert_eq!(dst.words[1], 1 << 6);
        assert_eq!(dst.words[2], 1 << 5);
    }

    #[test]
    fn dense_sums_match_generic() {
        use rand::Rng;
        for d in 1..=3 {
            let base = cube(3, d).unwrap();
            for seed in 0..30 {
                let mut rng = instance_rng(5, seed);
                let sets: Vec<LatticeSet> = (0..3)
                    .map(|_| {
                        let pts = base.iter().filter(|_| rng.gen_bool(0.3)).cloned();
                        let s = LatticeSet::from_points(d, pts).unwrap();
                        if s.is_empty() { LatticeSet::from_points(d, [base.points()[0].clone()]).unwrap() } else { s }
                    })
                    .collect();
                let boxed = DenseBox::for_sum(3, 3, d).unwrap();
                let idx: Vec<Vec<usize>> = sets.iter().map(|s| boxed.indices(s)).collect();
                let refs: Vec<&[usize]> = idx.iter().map(Vec::as_slice).collect();
                assert_eq!(boxed.sum_size(&refs), sum_all(&sets).unwrap().cardinality());
            }
        }
    }

    #[test]
    fn instance_streams_differ() {
        use rand::RngCore;
        let a = instance_rng(1, 0).next_u64();
        let b = instance_rng(1, 1).next_u64();
        let c = instance_rng(1, 0).next_u64();
        assert_ne!(a, b);
        assert_eq!(a, c);
    }
}
