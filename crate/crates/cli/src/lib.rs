//! Benchmark harness for persiansort and the reference sorts.
//!
//! [`run_experiment`] sweeps an [`ExperimentConfig`] grid, runs each cell to
//! the [`adaptive_trials`] stopping rule and returns one [`ReportRow`] per
//! grid point and algorithm. [`emit_report`] renders rows as CSV or markdown.

pub mod config;
pub mod experiment;
pub mod report;
pub mod trials;

pub use config::{ConfigError, Experiment, ExperimentConfig, GridPoint, Metric, Scale, WpPolicy};
pub use experiment::{run_experiment, worker_threads, HarnessError, ReportRow};
pub use report::{emit_report, ReportFormat};
pub use trials::{adaptive_trials, TrialSummary, MIN_BATCH};
