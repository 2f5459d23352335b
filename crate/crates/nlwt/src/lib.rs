//! File formats, the benchmark harness and the `nlwt` command line on top of
//! [`nlwt_core`].

pub mod bench;
pub mod cli;
pub mod config;
pub mod error;
pub mod io;
pub mod params;
pub mod report;

pub use bench::{run_benchmark, run_benchmark_on, BenchRow, BenchmarkPlan, RecordSource, SynthSpec};
pub use error::{Error, Result};
pub use io::{read_csv, write_csv, Channel, RecordFile};
pub use nlwt_core;
pub use report::{write_report, ReportFormat};
