//! Experiment harness for the completion solver: solution-pool generation,
//! positive sampling, timed solve campaigns, and distribution summaries.
//! The `queens` binary in this crate exposes all of it on the command line;
//! this library carries the logic so tests can drive it directly.

pub mod bench;
pub mod sample;
pub mod stats;

pub use bench::{
    aggregate, read_trials, run_bench, write_trials, BenchError, BenchReport, TrialRecord,
    TrialVerdict,
};
pub use sample::{gen_solutions, sample_compositions, GenError};
pub use stats::{
    bt_group_means, equal_width_histogram, scaling_fit, write_histogram_csv, FitError,
    HistogramBin, ScalingFit,
};
