//! Curve files, reports and the benchmark generator.

pub mod bench;
pub mod parse;
pub mod report;

pub use bench::{bench_run, parse_bench_spec, BenchRow, BenchSpec};
pub use parse::{parse_curve, print_curve, read_curve};
pub use report::{format_report, format_templates};
