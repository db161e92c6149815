//! Criterion benchmarks for the exact pipelines live in `benches/`.
