//! Experiment configuration: flat `key = value` files with `#` comments,
//! overridable from the command line.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Baseline,
    Aperiodic,
    Periodic,
    Preprocess,
    Primitives,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Baseline => "baseline",
            Mode::Aperiodic => "aperiodic",
            Mode::Periodic => "periodic",
            Mode::Preprocess => "preprocess",
            Mode::Primitives => "primitives",
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "baseline" => Ok(Mode::Baseline),
            "aperiodic" => Ok(Mode::Aperiodic),
            "periodic" => Ok(Mode::Periodic),
            "preprocess" => Ok(Mode::Preprocess),
            "primitives" => Ok(Mode::Primitives),
            other => Err(Error::Config(format!("unknown mode '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Random,
    Planted,
    AdversarialPeriodic,
    AllSame,
}

impl Generator {
    pub fn as_str(self) -> &'static str {
        match self {
            Generator::Random => "random",
            Generator::Planted => "planted",
            Generator::AdversarialPeriodic => "adversarial_periodic",
            Generator::AllSame => "all_same",
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Generator::Random),
            "planted" => Ok(Generator::Planted),
            "adversarial_periodic" => Ok(Generator::AdversarialPeriodic),
            "all_same" => Ok(Generator::AllSame),
            other => Err(Error::Config(format!("unknown generator '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub n_values: Vec<usize>,
    pub m_values: Vec<usize>,
    pub alphabet_size: u8,
    pub trials: usize,
    pub seed: u64,
    pub generator: Generator,
    pub budget_factor: f64,
    pub memoize_h: bool,
    pub output_path: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            mode: Mode::Aperiodic,
            n_values: vec![1024],
            m_values: vec![16],
            alphabet_size: 2,
            trials: 100,
            seed: 0,
            generator: Generator::Planted,
            budget_factor: crate::qsearch::DEFAULT_BUDGET_FACTOR,
            memoize_h: true,
            output_path: PathBuf::from("out"),
        }
    }
}

impl ExperimentConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let content = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = ExperimentConfig::default();
        for (lineno, raw) in content.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "{}:{}: expected 'key = value'",
                    path.display(),
                    lineno + 1
                )));
            };
            cfg.set(key.trim(), value.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::Config(format!("invalid {what}: '{value}'"));
        match key {
            "mode" => self.mode = value.parse()?,
            "generator" => self.generator = value.parse()?,
            "n" | "n_values" => self.n_values = parse_list(value).ok_or_else(|| bad("n list"))?,
            "m" | "m_values" => self.m_values = parse_list(value).ok_or_else(|| bad("m list"))?,
            "alphabet" | "alphabet_size" => {
                self.alphabet_size = value.parse().map_err(|_| bad("alphabet size"))?
            }
            "trials" => self.trials = value.parse().map_err(|_| bad("trial count"))?,
            "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
            "budget_factor" => {
                self.budget_factor = value.parse().map_err(|_| bad("budget factor"))?
            }
            "memoize_h" => {
                self.memoize_h = match value {
                    "true" | "1" => true,
                    "false" | "0" => false,
                    _ => return Err(bad("memoize_h flag")),
                }
            }
            "out" | "output" | "output_path" => self.output_path = PathBuf::from(value),
            other => return Err(Error::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.n_values.is_empty() || self.m_values.is_empty() {
            return Err(Error::Config("n and m lists must be nonempty".into()));
        }
        if !(2..=26).contains(&self.alphabet_size) {
            return Err(Error::Config("alphabet size must lie in [2, 26]".into()));
        }
        if !(self.budget_factor.is_finite() && self.budget_factor > 0.0) {
            return Err(Error::Config("budget factor must be positive".into()));
        }
        let max_m = *self.m_values.iter().max().unwrap();
        let min_n = *self.n_values.iter().min().unwrap();
        if max_m > min_n {
            return Err(Error::Config(format!(
                "every m must fit every n: m={max_m} > n={min_n}"
            )));
        }
        Ok(())
    }

    /// The (n, m) grid: full cross product, each with a stable config id.
    pub fn pairs(&self) -> Vec<(u64, usize, usize)> {
        let mut out = Vec::new();
        let mut id = 0u64;
        for &n in &self.n_values {
            for &m in &self.m_values {
                out.push((id, n, m));
                id += 1;
            }
        }
        out
    }
}

fn parse_list(value: &str) -> Option<Vec<usize>> {
    let items: Vec<usize> = value
        .split(',')
        .map(|s| s.trim().parse().ok())
        .collect::<Option<_>>()?;
    if items.is_empty() {
        None
    } else {
        Some(items)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_flat_config_file() {
        let dir = std::env::temp_dir().join("qsm-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("exp.conf");
        std::fs::write(
            &path,
            "# experiment\nmode = baseline\nn = 256, 512\nm = 16\ntrials = 5\nseed = 7\n",
        )
        .unwrap();
        let cfg = ExperimentConfig::from_file(&path).unwrap();
        assert_eq!(cfg.mode, Mode::Baseline);
        assert_eq!(cfg.n_values, vec![256, 512]);
        assert_eq!(cfg.trials, 5);
        assert_eq!(cfg.seed, 7);
    }

    #[test]
    fn rejects_impossible_sizes() {
        let cfg = ExperimentConfig {
            m_values: vec![2048],
            ..ExperimentConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
