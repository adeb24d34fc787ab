//! Experiment runner comparing exact kernels with the predicted asymptotics.

pub mod config;
pub mod experiments;
pub mod report;

pub use config::{format_complex, parse_complex, Experiment, ExperimentConfig, Method, Tolerances};
pub use experiments::{
    run, run_crosscheck, run_decay, run_diagonal, run_gaussian, run_offdiagonal, run_phase, run_selection,
    run_translated,
};
pub use report::{fit_rate, read_csv, write_csv, Assertion, ConvergenceRow, ExperimentReport, RateFit};
