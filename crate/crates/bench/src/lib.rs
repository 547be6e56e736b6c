//! Criterion benchmarks for the sumsetlab kernels; see `benches/`.
