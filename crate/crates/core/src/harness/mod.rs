//! Experiment harness: instance generation, trial execution, scaling fits,
//! and file emission.

pub mod config;
pub mod emit;
pub mod fit;
pub mod gen;
pub mod run;
pub mod selftest;

pub use config::{ExperimentConfig, Generator, Mode};
pub use emit::{emit, parse_records_csv, EmittedPaths};
pub use fit::{fit_scaling, FitVariable, Normalization, ScalingFit};
pub use gen::generate_instance;
pub use run::{run_experiment, TrialRecord};
pub use selftest::run_selftest;
