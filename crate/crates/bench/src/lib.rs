//! Benchmarks for `equisect`; see `benches/`.
