//! Criterion benchmarks for the bound evaluators, searches and simulator; see `benches/`.
