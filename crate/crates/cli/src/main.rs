//! `qsm`: run seeded matching experiments, fit scaling exponents, and run
//! the exhaustive self-test suites.
//!
//! Exit codes: 0 all checks pass, 1 run or check failure, 2 usage/config
//! error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qsm_core::error::Error;
use qsm_core::harness::{
    self, emit, fit_scaling, parse_records_csv, ExperimentConfig, FitVariable, Normalization,
};

#[derive(Parser)]
#[command(
    name = "qsm",
    version,
    about = "query-model string matching experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file.
    Run {
        /// Flat `key = value` config file; CLI flags override file keys.
        #[arg(long)]
        config: PathBuf,
        /// Override the experiment mode.
        #[arg(long)]
        mode: Option<String>,
        /// Override the base seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the per-configuration trial count.
        #[arg(long)]
        trials: Option<usize>,
        /// Override the output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Charge the block probe on every comparison instead of once per
        /// (trial, block).
        #[arg(long)]
        no_memoize_h: bool,
    },
    /// Fit a scaling exponent over an existing records file.
    Fit {
        #[arg(long)]
        records: PathBuf,
        #[arg(long, value_enum)]
        variable: Variable,
        #[arg(long, value_enum, default_value = "none")]
        normalization: Norm,
    },
    /// Run the exhaustive small-instance suites.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variable {
    N,
    M,
}

#[derive(Clone, Copy, ValueEnum)]
enum Norm {
    None,
    Block,
    Preprocess,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::InvalidArgument(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli) -> qsm_core::Result<bool> {
    match cli.command {
        Command::Run {
            config,
            mode,
            seed,
            trials,
            out,
            no_memoize_h,
        } => {
            let mut cfg = ExperimentConfig::from_file(&config).map_err(|e| match e {
                Error::Io { path, source } => {
                    Error::Config(format!("cannot read config {}: {source}", path.display()))
                }
                other => other,
            })?;
            if let Some(mode) = mode {
                cfg.mode = mode.parse()?;
            }
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if let Some(trials) = trials {
                cfg.trials = trials;
            }
            if let Some(out) = out {
                cfg.output_path = out;
            }
            if no_memoize_h {
                cfg.memoize_h = false;
            }
            cfg.validate()?;

            let records = harness::run_experiment(&cfg)?;
            let mut fits = Vec::new();
            for (variable, norm) in [
                (FitVariable::N, default_norm(&cfg)),
                (FitVariable::M, default_norm(&cfg)),
            ] {
                if let Ok(fit) = fit_scaling(&records, variable, norm) {
                    fits.push(fit);
                }
            }
            let paths = emit(&records, &fits, &cfg.output_path)?;
            println!("wrote {}", paths.records_csv.display());
            println!("wrote {}", paths.fits_csv.display());
            println!("wrote {}", paths.summary_txt.display());
            Ok(true)
        }
        Command::Fit {
            records,
            variable,
            normalization,
        } => {
            let content =
                std::fs::read_to_string(&records).map_err(|e| qsm_core::Error::io(&records, e))?;
            let parsed = parse_records_csv(&content)?;
            let fit = fit_scaling(
                &parsed,
                match variable {
                    Variable::N => FitVariable::N,
                    Variable::M => FitVariable::M,
                },
                match normalization {
                    Norm::None => Normalization::None,
                    Norm::Block => Normalization::BlockMatcher,
                    Norm::Preprocess => Normalization::Preprocess,
                },
            )?;
            println!(
                "variable={} exponent={:.6} r_squared={:.6} normalization={}",
                fit.variable.as_str(),
                fit.exponent,
                fit.r_squared,
                fit.normalization
            );
            Ok(true)
        }
        Command::Selftest => harness::run_selftest(),
    }
}

fn default_norm(cfg: &ExperimentConfig) -> Normalization {
    match cfg.mode {
        harness::Mode::Aperiodic | harness::Mode::Periodic => Normalization::BlockMatcher,
        harness::Mode::Preprocess => Normalization::Preprocess,
        _ => Normalization::None,
    }
}
