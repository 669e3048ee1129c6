//! Criterion benchmarks for `ppmetric`; see `benches/`.
