//! Criterion benchmarks for `tensorwalk`; see `benches/`.
