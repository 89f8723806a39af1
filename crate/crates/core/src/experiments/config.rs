//! Experiment descriptions and the key-value config format.
//!
//! ```text
//! # Runtime distribution on Cliff
//! kind      = runtime
//! fitness   = cliff
//! n         = 15
//! k         = 2^0..2^19
//! runs      = 1000
//! base_seed = 42
//! budget    = 100000000
//! output    = runtime_n15.csv
//! ```
//!
//! Lists are comma-separated. `k` entries are real literals, `2^j`, ranges
//! `2^a..2^b`, or formulas of n: `log n` (natural log), `sqrt n`, `n`, `n^a`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fitness::FitnessKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    Variance,
    Runtime,
    Drift,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Variance => "variance",
            ExperimentKind::Runtime => "runtime",
            ExperimentKind::Drift => "drift",
        }
    }

    fn default_budget(self) -> u64 {
        match self {
            ExperimentKind::Variance => 1_000_000_000,
            ExperimentKind::Runtime => 100_000_000,
            ExperimentKind::Drift => 10_000_000,
        }
    }

    fn stream_tag(self) -> u64 {
        match self {
            ExperimentKind::Variance => 1,
            ExperimentKind::Runtime => 2,
            ExperimentKind::Drift => 3,
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "variance" | "variance-exp" => Ok(ExperimentKind::Variance),
            "runtime" | "runtime-exp" => Ok(ExperimentKind::Runtime),
            "drift" | "drift-exp" => Ok(ExperimentKind::Drift),
            other => Err(Error::Config(format!("unknown experiment kind '{other}'"))),
        }
    }
}

/// An update strength, either explicit or a function of n.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KSpec {
    Explicit(f64),
    /// Natural logarithm of n.
    LogN,
    /// `n^a`.
    PowerOfN(f64),
    /// `2^j`.
    PowerOfTwo(i32),
}

impl KSpec {
    pub fn resolve(self, n: usize) -> f64 {
        let n = n as f64;
        match self {
            KSpec::Explicit(k) => k,
            KSpec::LogN => n.ln(),
            KSpec::PowerOfN(1.0) => n,
            KSpec::PowerOfN(0.5) => n.sqrt(),
            KSpec::PowerOfN(a) => n.powf(a),
            KSpec::PowerOfTwo(j) => 2f64.powi(j),
        }
    }

    /// `log2 K` (exact for `2^j`).
    pub fn exponent(self, n: usize) -> f64 {
        match self {
            KSpec::PowerOfTwo(j) => j as f64,
            other => other.resolve(n).log2(),
        }
    }

    /// Parses one list entry; `2^a..2^b` expands to several.
    pub fn parse_list_entry(s: &str) -> Result<Vec<KSpec>> {
        let s = s.trim();
        if let Some((lo, hi)) = s.split_once("..") {
            let (lo, hi) = (parse_power_of_two(lo)?, parse_power_of_two(hi)?);
            if lo > hi {
                return Err(Error::Config(format!("empty K range '{s}'")));
            }
            return Ok((lo..=hi).map(KSpec::PowerOfTwo).collect());
        }
        Ok(vec![s.parse()?])
    }
}

fn parse_power_of_two(s: &str) -> Result<i32> {
    s.trim()
        .strip_prefix("2^")
        .and_then(|j| j.trim().parse().ok())
        .ok_or_else(|| Error::Config(format!("expected 2^j, got '{}'", s.trim())))
}

impl FromStr for KSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .to_ascii_lowercase();
        let spec = match compact.as_str() {
            "logn" | "lnn" | "log(n)" | "ln(n)" => KSpec::LogN,
            "sqrtn" | "sqrt(n)" => KSpec::PowerOfN(0.5),
            "n" => KSpec::PowerOfN(1.0),
            other => {
                if let Some(a) = other.strip_prefix("n^") {
                    KSpec::PowerOfN(
                        a.parse()
                            .map_err(|_| Error::Config(format!("bad exponent in '{s}'")))?,
                    )
                } else if let Some(j) = other.strip_prefix("2^") {
                    KSpec::PowerOfTwo(
                        j.parse()
                            .map_err(|_| Error::Config(format!("bad exponent in '{s}'")))?,
                    )
                } else if let Ok(k) = other.parse::<f64>() {
                    KSpec::Explicit(k)
                } else {
                    return Err(Error::Config(format!("unknown K formula '{}'", s.trim())));
                }
            }
        };
        Ok(spec)
    }
}

impl fmt::Display for KSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KSpec::Explicit(k) => write!(f, "{k}"),
            KSpec::LogN => f.write_str("log n"),
            KSpec::PowerOfN(a) if *a == 1.0 => f.write_str("n"),
            KSpec::PowerOfN(a) if *a == 0.5 => f.write_str("sqrt n"),
            KSpec::PowerOfN(a) => write!(f, "n^{a}"),
            KSpec::PowerOfTwo(j) => write!(f, "2^{j}"),
        }
    }
}

/// Resolves a K formula (or literal) at `n`.
pub fn resolve_k(formula: &str, n: usize) -> Result<f64> {
    Ok(formula.parse::<KSpec>()?.resolve(n))
}

/// A declarative experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub fitness: FitnessKind,
    pub n_values: Vec<usize>,
    pub k_spec: Vec<KSpec>,
    /// Runs per (n, K); snapshots per (n, K) for drift.
    pub runs: u64,
    pub base_seed: u64,
    /// Evaluations per run (runtime), iteration cap (variance) or horizon
    /// for reaching the drift interval (drift).
    pub budget: u64,
    pub output_path: PathBuf,
    /// Drift interval is `[2n/3 - V^(1/2 - epsilon), 2n/3]`.
    pub epsilon: f64,
    /// Monte-Carlo steps per drift snapshot.
    pub samples: u64,
    /// Worker threads; `None` uses all available.
    pub jobs: Option<usize>,
    /// Progress lines on standard error.
    pub progress: bool,
}

impl ExperimentConfig {
    pub const DEFAULT_EPSILON: f64 = 0.25;
    pub const DEFAULT_SAMPLES: u64 = 100_000;

    pub fn new(kind: ExperimentKind) -> Self {
        Self {
            kind,
            fitness: FitnessKind::Cliff,
            n_values: Vec::new(),
            k_spec: Vec::new(),
            runs: 1,
            base_seed: crate::rng::DEFAULT_SEED,
            budget: kind.default_budget(),
            output_path: PathBuf::from(format!("{kind}.csv")),
            epsilon: Self::DEFAULT_EPSILON,
            samples: Self::DEFAULT_SAMPLES,
            jobs: None,
            progress: false,
        }
    }

    /// Parses the key-value format. `kind` must be present unless given.
    pub fn parse(text: &str, kind: Option<ExperimentKind>) -> Result<Self> {
        let mut entries = Vec::new();
        let mut file_kind = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .or_else(|| line.split_once(':'))
                .ok_or_else(|| {
                    Error::Config(format!("line {}: expected 'key = value'", lineno + 1))
                })?;
            let key = key.trim().to_ascii_lowercase();
            if key == "kind" {
                file_kind = Some(value.parse::<ExperimentKind>()?);
            } else {
                entries.push((key, value.trim().to_string()));
            }
        }
        let kind = match (kind, file_kind) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::Config(format!(
                    "config is for a {b} experiment, not {a}"
                )))
            }
            (Some(k), _) | (None, Some(k)) => k,
            (None, None) => return Err(Error::Config("missing 'kind'".into())),
        };
        let mut cfg = Self::new(kind);
        for (key, value) in entries {
            cfg.set(&key, &value)?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path, kind: Option<ExperimentKind>) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, kind)
    }

    /// Sets one field from its textual form (config key or CLI flag name).
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::Config(format!("invalid {what} '{value}'"));
        match key.replace('-', "_").as_str() {
            "fitness" => self.fitness = value.parse().map_err(|_| bad("fitness"))?,
            "n" | "n_values" => {
                self.n_values = split_list(value)
                    .map(|s| s.parse::<usize>().map_err(|_| bad("n")))
                    .collect::<Result<_>>()?
            }
            "k" | "k_spec" => {
                let mut specs = Vec::new();
                for entry in split_list(value) {
                    specs.extend(KSpec::parse_list_entry(entry)?);
                }
                self.k_spec = specs;
            }
            "runs" | "snapshots" => self.runs = parse_count(value).ok_or_else(|| bad("runs"))?,
            "base_seed" | "seed" => self.base_seed = value.parse().map_err(|_| bad("seed"))?,
            "budget" | "max_evals" | "horizon" => {
                self.budget = parse_count(value).ok_or_else(|| bad("budget"))?
            }
            "output" | "output_path" => self.output_path = PathBuf::from(value),
            "epsilon" => self.epsilon = value.parse().map_err(|_| bad("epsilon"))?,
            "samples" => self.samples = parse_count(value).ok_or_else(|| bad("samples"))?,
            "jobs" => self.jobs = Some(value.parse().map_err(|_| bad("jobs"))?),
            other => return Err(Error::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let err = |m: String| Err(Error::Config(m));
        if self.runs < 1 {
            return err("runs must be at least 1".into());
        }
        if self.n_values.is_empty() {
            return err("no n values given".into());
        }
        if self.k_spec.is_empty() {
            return err("no K values given".into());
        }
        if self.jobs == Some(0) {
            return err("jobs must be at least 1".into());
        }
        for &n in &self.n_values {
            if n < 2 {
                return err(format!("n must be at least 2 (got {n})"));
            }
            if self.fitness == FitnessKind::Cliff && n % 3 != 0 {
                return err(format!("n must be divisible by 3 for cliff (got n={n})"));
            }
            for k in &self.k_spec {
                let v = k.resolve(n);
                if !(v.is_finite() && v > 0.0) {
                    return err(format!("K = {k} resolves to {v} at n={n}"));
                }
            }
        }
        match self.kind {
            ExperimentKind::Runtime | ExperimentKind::Drift
                if self.fitness != FitnessKind::Cliff =>
            {
                return err(format!("{} experiments run on cliff", self.kind));
            }
            ExperimentKind::Runtime if self.budget < 2 => {
                return err("budget must be at least 2 evaluations".into())
            }
            ExperimentKind::Drift if self.samples < 1 => {
                return err("samples must be at least 1".into())
            }
            ExperimentKind::Drift if !(0.0..0.5).contains(&self.epsilon) => {
                return err(format!("epsilon must lie in [0, 1/2) (got {})", self.epsilon))
            }
            _ => {}
        }
        Ok(())
    }

    /// Every (n, K) pair in output order.
    pub fn grid(&self) -> Vec<(usize, KSpec, f64)> {
        self.n_values
            .iter()
            .flat_map(|&n| self.k_spec.iter().map(move |&k| (n, k, k.resolve(n))))
            .collect()
    }

    /// Seed of the stream for one row, from `(base_seed, row keys)`.
    pub fn row_seed(&self, n: usize, k_value: f64, index: u64) -> u64 {
        crate::rng::derive_seed(
            self.base_seed,
            &[self.kind.stream_tag(), n as u64, k_value.to_bits(), index],
        )
    }
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

/// Integers, also written as `1e8` or with `_` separators.
fn parse_count(s: &str) -> Option<u64> {
    let s = s.trim().replace('_', "");
    if let Ok(v) = s.parse::<u64>() {
        return Some(v);
    }
    let v: f64 = s.parse().ok()?;
    (v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64).then_some(v as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolve_examples() {
        assert!((resolve_k("n^0.45", 100).unwrap() - 7.943_282_347_242_816).abs() < 1e-12);
        assert_eq!(resolve_k("sqrt n", 400).unwrap(), 20.0);
        assert!((resolve_k("log n", 8).unwrap() - 8f64.ln()).abs() < 1e-15);
        assert!((resolve_k("log n", 8).unwrap() - 2.079).abs() < 1e-3);
        assert_eq!(resolve_k("n", 340).unwrap(), 340.0);
        assert_eq!(resolve_k("2^6", 15).unwrap(), 64.0);
        assert_eq!(resolve_k("1e9", 4).unwrap(), 1e9);
        assert!(resolve_k("n^x", 4).is_err());
        assert!(resolve_k("cbrt n", 4).is_err());
    }

    #[test]
    fn k_labels_round_trip() {
        for s in ["log n", "sqrt n", "n", "n^0.45", "n^0.75", "2^7", "12.5"] {
            let spec: KSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            assert_eq!(spec.to_string().parse::<KSpec>().unwrap(), spec);
        }
    }

    #[test]
    fn power_of_two_range() {
        let specs = KSpec::parse_list_entry("2^0..2^19").unwrap();
        assert_eq!(specs.len(), 20);
        assert_eq!(specs[19].resolve(15), 524_288.0);
        assert_eq!(specs[5].exponent(15), 5.0);
        assert!(KSpec::parse_list_entry("2^3..2^1").is_err());
    }

    #[test]
    fn parses_config_text() {
        let text = "
            # runtime grid
            kind = runtime
            fitness = cliff
            n = 15, 18
            k = 2^0..2^3, 100
            runs = 1000
            base_seed = 7
            budget = 1e8
            output = out.csv
        ";
        let cfg = ExperimentConfig::parse(text, None).unwrap();
        assert_eq!(cfg.kind, ExperimentKind::Runtime);
        assert_eq!(cfg.n_values, vec![15, 18]);
        assert_eq!(cfg.k_spec.len(), 5);
        assert_eq!(cfg.runs, 1000);
        assert_eq!(cfg.base_seed, 7);
        assert_eq!(cfg.budget, 100_000_000);
        assert_eq!(cfg.output_path, PathBuf::from("out.csv"));
        cfg.validate().unwrap();
        assert_eq!(cfg.grid().len(), 10);
    }

    #[test]
    fn config_errors() {
        assert!(ExperimentConfig::parse("n = 15", None).is_err());
        assert!(ExperimentConfig::parse("kind = runtime\nbogus = 1", None).is_err());
        assert!(ExperimentConfig::parse("kind = runtime\nn = x", None).is_err());
        assert!(ExperimentConfig::parse("kind = runtime", Some(ExperimentKind::Drift)).is_err());
        assert!(ExperimentConfig::parse("kind = runtime\nline without separator", None).is_err());

        let mut cfg = ExperimentConfig::parse("kind=runtime\nn=15\nk=2^0\nruns=0", None).unwrap();
        assert!(cfg.validate().is_err());
        cfg.runs = 1;
        cfg.validate().unwrap();
        cfg.n_values = vec![16];
        assert!(cfg.validate().is_err());
        cfg.n_values = vec![15];
        cfg.k_spec = vec![KSpec::Explicit(-1.0)];
        assert!(cfg.validate().is_err());
        cfg.k_spec = vec![KSpec::LogN];
        cfg.fitness = FitnessKind::OneMax;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn row_seeds_are_keyed() {
        let cfg = ExperimentConfig::new(ExperimentKind::Runtime);
        let a = cfg.row_seed(15, 64.0, 3);
        assert_eq!(a, cfg.row_seed(15, 64.0, 3));
        assert_ne!(a, cfg.row_seed(15, 64.0, 4));
        assert_ne!(a, cfg.row_seed(18, 64.0, 3));
        assert_ne!(a, cfg.row_seed(15, 128.0, 3));
        let other = ExperimentConfig::new(ExperimentKind::Variance);
        assert_ne!(a, other.row_seed(15, 64.0, 3));
    }

    #[test]
    fn counts() {
        assert_eq!(parse_count("1e8"), Some(100_000_000));
        assert_eq!(parse_count("100_000"), Some(100_000));
        assert_eq!(parse_count("1.5"), None);
        assert_eq!(parse_count("-3"), None);
    }
}
