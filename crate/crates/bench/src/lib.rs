//! Criterion benchmarks for polynomial construction, operator action and quadrature.
//! Run with `cargo bench -p dunklpoly-bench`.
