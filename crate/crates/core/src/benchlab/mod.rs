//! Testbeds of Gaussian-process sample paths on a finite grid, a harness
//! that runs each strategy on every path, and the error curves it
//! produces. Also hosts the one-dimensional demo objective.

mod aggregate;
mod functions;
mod run;
mod testbed;

pub use aggregate::{aggregate, read_records_csv, write_aggregate_csv, write_records_csv, CurvePoint};
pub use functions::{beta_from_dimension, fig2_function};
pub use run::{run_benchmark, BenchmarkOutcome, BenchmarkRecord, PathFailure};
pub use testbed::{generate_testbed, GridScheme, PathTruth, Testbed, TestbedConfig};
