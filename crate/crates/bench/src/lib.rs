//! Shared fixtures for the criterion benchmarks.

/// Catalog entries benchmarked at several digit targets.
pub const BENCH_IDS: &[&str] = &["S1.1", "S1.11", "S1.16", "B-GOSPER"];

/// Digit targets used by the series benchmarks.
pub const BENCH_DIGITS: &[u64] = &[100, 300, 1000];

pub use constforge;
