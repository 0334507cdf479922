//! Experiment runner for spectral-mean convergence: test signals, sweeps
//! over `t`, norm-equivalence studies and hypothesis reports, with CSV and
//! JSON output.

pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod output;
pub mod signals;

pub use config::{ExperimentConfig, ExperimentKind, NormRoute, OutputFormat, Schedule, SpaceParams};
pub use error::{HarnessError, HarnessResult};
pub use experiments::{
    run_conditions, run_convergence_distribution, run_convergence_function, run_equivalence, ConvergenceReport,
    EquivalenceReport,
};
pub use signals::{make_signal, Signal};
