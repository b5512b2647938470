//! Criterion benchmarks for `schubert-core`; see `benches/`.
