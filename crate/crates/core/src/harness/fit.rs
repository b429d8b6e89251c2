//! Log-log scaling fits over trial records.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::harness::run::TrialRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitVariable {
    N,
    M,
}

impl FitVariable {
    pub fn as_str(self) -> &'static str {
        match self {
            FitVariable::N => "n",
            FitVariable::M => "m",
        }
    }
}

/// Which charge is fitted and which logarithmic factors are divided out
/// before taking logs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Raw ledger totals.
    None,
    /// Matcher charge (block search + in-block) divided by
    /// log2(sqrt(n/m)) * log2(m).
    BlockMatcher,
    /// Preprocessing charge divided by log2(m)^2.
    Preprocess,
}

impl Normalization {
    pub fn label(self) -> &'static str {
        match self {
            Normalization::None => "none",
            Normalization::BlockMatcher => "matcher/(log2 sqrt(n/m) * log2 m)",
            Normalization::Preprocess => "preprocess/(log2 m)^2",
        }
    }

    fn value(self, r: &TrialRecord) -> f64 {
        match self {
            Normalization::None => r.ledger_total as f64,
            Normalization::BlockMatcher => {
                let charge = (r.ledger_block_search + r.ledger_in_block) as f64;
                let ratio = (r.n as f64 / r.m as f64).max(2.0);
                charge / (ratio.sqrt().log2() * (r.m as f64).log2().max(1.0))
            }
            Normalization::Preprocess => {
                let log_m = (r.m as f64).log2().max(1.0);
                r.ledger_preprocess as f64 / (log_m * log_m)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScalingFit {
    pub variable: FitVariable,
    pub exponent: f64,
    pub r_squared: f64,
    pub normalization: String,
}

/// Least-squares fit of log(mean normalized charge) against log(variable).
/// Requires at least four distinct values of the fitted variable.
pub fn fit_scaling(
    records: &[TrialRecord],
    variable: FitVariable,
    normalization: Normalization,
) -> Result<ScalingFit> {
    let mut groups: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
    for r in records {
        let key = match variable {
            FitVariable::N => r.n,
            FitVariable::M => r.m,
        };
        let entry = groups.entry(key).or_insert((0.0, 0));
        entry.0 += normalization.value(r);
        entry.1 += 1;
    }
    if groups.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "need at least 4 distinct {} values, have {}",
            variable.as_str(),
            groups.len()
        )));
    }

    let points: Vec<(f64, f64)> = groups
        .iter()
        .map(|(&key, &(sum, count))| ((key as f64).ln(), (sum / count as f64).ln()))
        .collect();
    let (exponent, r_squared) = least_squares(&points);
    Ok(ScalingFit {
        variable,
        exponent,
        r_squared,
        normalization: normalization.label().to_string(),
    })
}

fn least_squares(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = points
        .iter()
        .map(|p| (p.1 - (slope * p.0 + intercept)).powi(2))
        .sum();
    let ss_tot: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let r_squared = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else {
        1.0
    };
    (slope, r_squared)
}
