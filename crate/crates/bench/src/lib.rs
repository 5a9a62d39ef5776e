//! Criterion benchmarks for the lrdesk kernels; see `benches/`.
