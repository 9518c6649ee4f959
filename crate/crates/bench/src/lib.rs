//! Criterion benchmarks for `hnpoly`; see `benches/`.
