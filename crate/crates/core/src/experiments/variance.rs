//! Sampling variance after a long, fixed number of iterations.

use super::{par_map, CsvRow, ExperimentConfig, ExperimentKind};
use crate::engine::{Bitstring, FrequencyModel};
use crate::error::{Error, Result};
use crate::fitness::UnitationFunction;
use crate::rng::rng_from_seed;

#[derive(Clone, Debug, PartialEq)]
pub struct VarianceRow {
    pub n: usize,
    pub k_label: String,
    pub k_value: f64,
    pub run: u64,
    pub iterations_executed: u64,
    pub variance_final: f64,
    pub variance_over_sqrt_k: f64,
    pub potential_final: f64,
}

impl CsvRow for VarianceRow {
    const HEADER: &'static str = "n,k_label,k_value,run,iterations_executed,variance_final,variance_over_sqrtK,potential_final";

    fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.k_label,
            self.k_value,
            self.run,
            self.iterations_executed,
            self.variance_final,
            self.variance_over_sqrt_k,
            self.potential_final
        )
    }
}

/// `ceil(100 sqrt(n) K + 100 K^2)`.
pub fn variance_iterations(n: usize, k: f64) -> u64 {
    (100.0 * (n as f64).sqrt() * k + 100.0 * k * k).ceil() as u64
}

/// Runs every (n, K, run) for the full iteration count (capped by the
/// budget) without stopping at the optimum, recording the final variance.
pub fn variance_experiment(cfg: &ExperimentConfig) -> Result<Vec<VarianceRow>> {
    if cfg.kind != ExperimentKind::Variance {
        return Err(Error::Config(format!("expected a variance config, got {}", cfg.kind)));
    }
    cfg.validate()?;
    let mut rows = Vec::new();
    for (n, spec, k) in cfg.grid() {
        let f = UnitationFunction::new(cfg.fitness, n)?;
        let required = variance_iterations(n, k);
        let iterations = required.min(cfg.budget);
        if cfg.progress {
            eprintln!(
                "variance: n={n} K={spec} ({k:.4}): {} runs x {iterations} iterations",
                cfg.runs
            );
        }
        let label = spec.to_string();
        let group = par_map(cfg.jobs, (0..cfg.runs).collect(), |run| {
            let mut model = FrequencyModel::new(n, k).expect("validated parameters");
            let mut rng = rng_from_seed(cfg.row_seed(n, k, run));
            let mut x = Bitstring::zeros(n);
            let mut y = Bitstring::zeros(n);
            for _ in 0..iterations {
                model.step_reusing(&f, &mut rng, &mut x, &mut y);
            }
            model.refresh();
            VarianceRow {
                n,
                k_label: label.clone(),
                k_value: k,
                run,
                iterations_executed: iterations,
                variance_final: model.sampling_variance(),
                variance_over_sqrt_k: model.sampling_variance() / k.sqrt(),
                potential_final: model.potential(),
            }
        })?;
        rows.extend(group);
    }
    Ok(rows)
}
