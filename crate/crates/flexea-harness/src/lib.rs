//! Experiment harness for the rate-archive evolutionary algorithm suite:
//! JSON-configured experiments, seeded parallel trials, CSV persistence,
//! summary statistics, sweeps, and paired comparisons.

pub mod config;
pub mod error;
pub mod experiment;
pub mod records;
pub mod stats;
pub mod validate;

pub use config::{AlgorithmName, AlgorithmSpec, BenchmarkName, BenchmarkSpec, ExperimentConfig};
pub use error::{HarnessError, Result};
pub use experiment::{compare, execute, run_experiment, sweep, ExperimentOutcome, SweepParam};
pub use records::{SummaryRow, TrialRecord};
pub use stats::{fit_scaling_exponent, SummaryStats};
