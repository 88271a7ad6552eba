//! Criterion benchmarks for `grfold-core` live in `benches/grfold.rs`.
