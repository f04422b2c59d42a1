//! Criterion benchmarks for `gausscat`; see `benches/`.
