use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sumsetlab::lattice::packed::{packed_sum, PackedGrid};
use sumsetlab::sumset::{additive_energy, minkowski_sum};
use sumsetlab::verify::runner::{instance_rng, DenseBox};
use sumsetlab::verify::sampling::random_subset;
use sumsetlab::verify::{verify_two_sets, Mode};
use sumsetlab::{cube, LatticeSet};

fn random_pair(seed: u64, side: u32, d: usize, prob: f64) -> (LatticeSet, LatticeSet) {
    let base = cube(side, d).unwrap();
    let mut rng = instance_rng(seed, 0);
    (random_subset(&mut rng, &base, prob), random_subset(&mut rng, &base, prob))
}

fn sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("sum");
    for d in [1usize, 2, 3] {
        let side = [60, 4, 1][d - 1];
        let (a, b) = random_pair(1, side, d, 0.5);
        let grid = PackedGrid::new(2 * side + 1, d).unwrap();
        let (pa, pb) = (grid.pack(&a).unwrap(), grid.pack(&b).unwrap());
        g.bench_with_input(BenchmarkId::new("packed", d), &(pa, pb), |bch, &(x, y)| {
            bch.iter(|| packed_sum(black_box(x), black_box(y)))
        });
        g.bench_with_input(BenchmarkId::new("sorted-merge", d), &(&a, &b), |bch, (x, y)| {
            bch.iter(|| minkowski_sum(black_box(x), black_box(y)).unwrap())
        });
    }
    let (a, b) = random_pair(2, 8, 2, 0.3);
    let boxed = DenseBox::for_sum(8, 2, 2).unwrap();
    let (ia, ib) = (boxed.indices(&a), boxed.indices(&b));
    g.bench_function("dense-box/d2-box8", |bch| {
        bch.iter(|| boxed.sum_size(black_box(&[ia.as_slice(), ib.as_slice()])))
    });
    g.finish();
}

fn energy(c: &mut Criterion) {
    let a = cube(3, 3).unwrap();
    c.bench_function("energy/cube3-d3", |bch| bch.iter(|| additive_energy(black_box(&a), 2).unwrap()));
}

fn campaigns(c: &mut Criterion) {
    let mut g = c.benchmark_group("two-sets-exhaustive");
    g.sample_size(10);
    for d in [1usize, 2] {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |bch, &d| {
            bch.iter(|| verify_two_sets(2, d, None, Mode::Exhaustive).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, sums, energy, campaigns);
criterion_main!(benches);
