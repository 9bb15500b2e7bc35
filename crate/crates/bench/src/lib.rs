//! Criterion benchmarks for `selfspec`; run with `cargo bench -p selfspec-bench`.
