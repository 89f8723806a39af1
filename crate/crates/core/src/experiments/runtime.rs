//! Optimisation-time distributions on Cliff.

use std::path::{Path, PathBuf};

use super::{header_line, par_map, CsvRow, ExperimentConfig, ExperimentKind};
use crate::engine::FrequencyModel;
use crate::error::{Error, Result};
use crate::fitness::UnitationFunction;

#[derive(Clone, Debug, PartialEq)]
pub struct RuntimeRow {
    pub n: usize,
    /// `log2 K`.
    pub k_exponent: f64,
    pub k_value: f64,
    pub run: u64,
    pub evaluations: u64,
    pub censored: bool,
    pub seed: u64,
}

impl CsvRow for RuntimeRow {
    const HEADER: &'static str = "n,k_exponent,k_value,run,evaluations,censored,seed";

    fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.k_exponent,
            self.k_value,
            self.run,
            self.evaluations,
            self.censored,
            self.seed
        )
    }
}

/// Reference runtimes `((3/2)^n, 2^n, n^(n/3))`.
pub fn reference_values(n: usize) -> (f64, f64, f64) {
    let nf = n as f64;
    (1.5f64.powf(nf), 2f64.powf(nf), nf.powf(nf / 3.0))
}

pub(crate) fn metadata_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

pub(crate) fn render_reference(cfg: &ExperimentConfig) -> String {
    let mut out = header_line("runtime-reference", cfg.base_seed);
    out.push_str("\nn,three_halves_pow_n,two_pow_n,n_pow_n_over_3\n");
    for &n in &cfg.n_values {
        let (a, b, c) = reference_values(n);
        out.push_str(&format!("{n},{a},{b},{c}\n"));
    }
    out
}

/// One full run per (n, K, run) until the optimum or the evaluation budget.
pub fn runtime_experiment(cfg: &ExperimentConfig) -> Result<Vec<RuntimeRow>> {
    if cfg.kind != ExperimentKind::Runtime {
        return Err(Error::Config(format!("expected a runtime config, got {}", cfg.kind)));
    }
    cfg.validate()?;
    let mut rows = Vec::new();
    for (n, spec, k) in cfg.grid() {
        let f = UnitationFunction::new(cfg.fitness, n)?;
        if cfg.progress {
            eprintln!("runtime: n={n} K={spec} ({k}): {} runs", cfg.runs);
        }
        let k_exponent = spec.exponent(n);
        let group = par_map(cfg.jobs, (0..cfg.runs).collect(), |run| -> Result<RuntimeRow> {
            let seed = cfg.row_seed(n, k, run);
            let mut model = FrequencyModel::new(n, k)?;
            let result = model.run_seeded(&f, seed, cfg.budget)?;
            Ok(RuntimeRow {
                n,
                k_exponent,
                k_value: k,
                run,
                evaluations: result.evaluations,
                censored: result.censored,
                seed,
            })
        })?;
        for row in group {
            rows.push(row?);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::KSpec;

    #[test]
    fn reference_lines() {
        let (a, b, c) = reference_values(15);
        assert!((a - 437.893_890_380_859_4).abs() < 1e-9);
        assert_eq!(b, 32768.0);
        assert!((c - 759_375.0).abs() < 1e-6);
    }

    #[test]
    fn grid_sizes() {
        let mut cfg = ExperimentConfig::new(ExperimentKind::Runtime);
        cfg.n_values = vec![15];
        cfg.k_spec = KSpec::parse_list_entry("2^0..2^19").unwrap();
        assert_eq!(cfg.grid().len(), 20);
    }

    #[test]
    fn censoring_contract() {
        let mut cfg = ExperimentConfig::new(ExperimentKind::Runtime);
        cfg.n_values = vec![15];
        cfg.k_spec = vec![KSpec::PowerOfTwo(0), KSpec::PowerOfTwo(10)];
        cfg.runs = 20;
        cfg.budget = 2_000;
        let rows = runtime_experiment(&cfg).unwrap();
        assert_eq!(rows.len(), 40);
        for r in &rows {
            if r.censored {
                assert_eq!(r.evaluations, cfg.budget);
            } else {
                assert!(r.evaluations <= cfg.budget && r.evaluations >= 1);
            }
            assert_eq!(r.seed, cfg.row_seed(r.n, r.k_value, r.run));
        }
    }

    #[test]
    fn metadata_file_name() {
        assert_eq!(metadata_path(Path::new("out/rt.csv")), PathBuf::from("out/rt.csv.meta"));
    }
}
