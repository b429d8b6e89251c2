//! Output files: records CSV, fits CSV, and a plain-text summary.
//!
//! CSV output is byte-stable: LF line endings, UTF-8, floats printed with
//! nine significant digits, no timestamps.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::harness::fit::ScalingFit;
use crate::harness::run::TrialRecord;

#[derive(Debug, Clone)]
pub struct EmittedPaths {
    pub records_csv: PathBuf,
    pub fits_csv: PathBuf,
    pub summary_txt: PathBuf,
}

/// Nine significant digits, stable across platforms.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.8e}")
}

pub fn records_to_csv(records: &[TrialRecord]) -> String {
    let mut out = String::from(TrialRecord::CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.to_csv_row());
        out.push('\n');
    }
    out
}

pub fn fits_to_csv(fits: &[ScalingFit]) -> String {
    let mut out = String::from("variable,exponent,r_squared,normalization\n");
    for f in fits {
        out.push_str(&format!(
            "{},{},{},{}\n",
            f.variable.as_str(),
            fmt_f64(f.exponent),
            fmt_f64(f.r_squared),
            f.normalization
        ));
    }
    out
}

fn summary_text(records: &[TrialRecord], fits: &[ScalingFit]) -> String {
    let mut out = String::from("experiment summary\n==================\n\n");
    let mut groups: BTreeMap<(usize, usize), (usize, usize, usize, u64)> = BTreeMap::new();
    for r in records {
        let e = groups.entry((r.n, r.m)).or_insert((0, 0, 0, 0));
        e.0 += 1;
        e.1 += r.correct as usize;
        e.2 += r.false_positive as usize;
        e.3 += r.ledger_total;
    }
    out.push_str("per (n, m):\n");
    for ((n, m), (trials, correct, fps, total)) in &groups {
        out.push_str(&format!(
            "  n={n} m={m}: trials={trials} correct_rate={} false_positives={fps} mean_charge={}\n",
            fmt_f64(*correct as f64 / *trials as f64),
            fmt_f64(*total as f64 / *trials as f64),
        ));
    }
    if !fits.is_empty() {
        out.push_str("\nscaling fits:\n");
        for f in fits {
            out.push_str(&format!(
                "  vs {}: exponent={} r2={} normalization={}\n",
                f.variable.as_str(),
                fmt_f64(f.exponent),
                fmt_f64(f.r_squared),
                f.normalization
            ));
        }
    }
    let fps: usize = records.iter().map(|r| r.false_positive as usize).sum();
    out.push_str(&format!(
        "\ntotals: records={} false_positives={fps}\n",
        records.len()
    ));
    out
}

/// Write `records.csv`, `fits.csv`, and `summary.txt` under `out_dir`.
pub fn emit(records: &[TrialRecord], fits: &[ScalingFit], out_dir: &Path) -> Result<EmittedPaths> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let paths = EmittedPaths {
        records_csv: out_dir.join("records.csv"),
        fits_csv: out_dir.join("fits.csv"),
        summary_txt: out_dir.join("summary.txt"),
    };
    fs::write(&paths.records_csv, records_to_csv(records))
        .map_err(|e| Error::io(&paths.records_csv, e))?;
    fs::write(&paths.fits_csv, fits_to_csv(fits)).map_err(|e| Error::io(&paths.fits_csv, e))?;
    fs::write(&paths.summary_txt, summary_text(records, fits))
        .map_err(|e| Error::io(&paths.summary_txt, e))?;
    Ok(paths)
}

/// Parse a records CSV produced by [`records_to_csv`].
pub fn parse_records_csv(content: &str) -> Result<Vec<TrialRecord>> {
    let mut lines = content.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Config("empty records file".into()))?;
    if header != TrialRecord::CSV_HEADER {
        return Err(Error::Config("unexpected records header".into()));
    }
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        records.push(
            parse_row(line)
                .ok_or_else(|| Error::Config(format!("records row {} is malformed", i + 2)))?,
        );
    }
    Ok(records)
}

fn parse_row(line: &str) -> Option<TrialRecord> {
    let cols: Vec<&str> = line.split(',').collect();
    if cols.len() != 15 {
        return None;
    }
    let opt = |s: &str| -> Option<Option<usize>> {
        if s.is_empty() {
            Some(None)
        } else {
            s.parse().ok().map(Some)
        }
    };
    Some(TrialRecord {
        config_id: cols[0].parse().ok()?,
        trial_index: cols[1].parse().ok()?,
        seed: cols[2].parse().ok()?,
        n: cols[3].parse().ok()?,
        m: cols[4].parse().ok()?,
        mode: cols[5].parse().ok()?,
        reported: opt(cols[6])?,
        truth_count: cols[7].parse().ok()?,
        truth_leftmost: opt(cols[8])?,
        correct: cols[9].parse().ok()?,
        false_positive: cols[10].parse().ok()?,
        ledger_total: cols[11].parse().ok()?,
        ledger_preprocess: cols[12].parse().ok()?,
        ledger_block_search: cols[13].parse().ok()?,
        ledger_in_block: cols[14].parse().ok()?,
    })
}
