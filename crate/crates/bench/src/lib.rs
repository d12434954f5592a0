//! Criterion benchmarks for `gbh-core`; see `benches/`.
