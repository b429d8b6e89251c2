//! Query-model simulation of sublinear string matching.
//!
//! The crate simulates, at the measurement-distribution level, a string
//! matcher built from three search primitives: unknown-count search over an
//! unordered domain, comparison-oracle minimum finding, and deterministic
//! sampling of pattern shifts. The measured quantity is the number of base
//! character comparisons charged to a [`ledger::QueryLedger`]; classical
//! reference oracles establish ground truth and are never charged.
//!
//! Module map:
//! - [`grover`]: closed-form measurement distribution plus a statevector
//!   cross-validation oracle.
//! - [`qsearch`]: the search primitives and majority amplification.
//! - [`ds`]: deterministic-sample construction and periodicity handling.
//! - [`matcher`]: the baseline, aperiodic-block, and periodic matchers.
//! - [`reference`]: classical ground truth (linear matching, sample
//!   verification, the deterministic window-rule skeleton).
//! - [`harness`]: experiment runner, scaling fits, CSV emission.

pub mod ds;
pub mod error;
pub mod grover;
pub mod harness;
pub mod ledger;
pub mod matcher;
pub mod qsearch;
pub mod reference;
pub mod rng;

pub use error::{Error, Result};
pub use ledger::{Phase, QueryLedger};
pub use rng::{derive_seed, TrialRng};
