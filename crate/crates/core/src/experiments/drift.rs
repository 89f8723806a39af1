//! Drift around the cliff: exact, predicted and Monte-Carlo estimates at
//! snapshots where the potential sits just below `2n/3`.

use rand::Rng;

use super::{par_map, CsvRow, ExperimentConfig, ExperimentKind};
use crate::analytics::{empirical_drift, pb_distribution, predicted_drift};
use crate::engine::{Bitstring, EventClass, FrequencyModel};
use crate::error::{Error, Result};
use crate::fitness::UnitationFunction;
use crate::rng::rng_from_seed;

/// Largest n for which the exact Poisson-binomial tail is computed.
pub const P_RIGHT_EXACT_MAX_N: usize = 2000;

#[derive(Clone, Debug, PartialEq)]
pub struct DriftRow {
    pub n: usize,
    pub k_value: f64,
    pub snapshot_id: u64,
    pub potential: f64,
    pub variance: f64,
    /// Exact `P(X > 2n/3)`; NaN above [`P_RIGHT_EXACT_MAX_N`].
    pub p_right_exact: f64,
    pub drift_empirical: f64,
    pub drift_stderr: f64,
    pub drift_predicted: f64,
    pub prob_m_empirical: f64,
}

impl CsvRow for DriftRow {
    const HEADER: &'static str = "n,k_value,snapshot_id,potential,variance,p_right_exact,drift_empirical,drift_stderr,drift_predicted,prob_M_empirical";

    fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.k_value,
            self.snapshot_id,
            self.potential,
            self.variance,
            self.p_right_exact,
            self.drift_empirical,
            self.drift_stderr,
            self.drift_predicted,
            self.prob_m_empirical
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DriftOutcome {
    pub rows: Vec<DriftRow>,
    /// `(n, K, snapshot_id)` for snapshots whose run never entered the
    /// interval within the horizon.
    pub not_reached: Vec<(usize, f64, u64)>,
}

/// `[2n/3 - V^(1/2 - epsilon), 2n/3]`.
pub fn drift_interval(n: usize, variance: f64, epsilon: f64) -> (f64, f64) {
    let top = (2 * n / 3) as f64;
    (top - variance.powf(0.5 - epsilon), top)
}

/// Steps `model` until its potential lies in the drift interval (checked
/// before every step). Returns whether it got there within `horizon` steps.
pub fn run_to_drift_interval<R: Rng + ?Sized>(
    model: &mut FrequencyModel,
    f: &UnitationFunction,
    rng: &mut R,
    horizon: u64,
    epsilon: f64,
) -> bool {
    let n = model.n();
    let inside = |m: &FrequencyModel| {
        let (lo, hi) = drift_interval(n, m.sampling_variance(), epsilon);
        (lo..=hi).contains(&m.potential())
    };
    let mut x = Bitstring::zeros(n);
    let mut y = Bitstring::zeros(n);
    for _ in 0..horizon {
        if inside(model) {
            return true;
        }
        model.step_reusing(f, rng, &mut x, &mut y);
    }
    inside(model)
}

/// Measures the drift at the given frozen snapshot.
pub fn measure_snapshot<R: Rng + ?Sized>(
    model: &FrequencyModel,
    f: &UnitationFunction,
    samples: u64,
    snapshot_id: u64,
    rng: &mut R,
) -> Result<DriftRow> {
    let n = model.n();
    let threshold = 2 * n / 3;
    let p_right_exact = if n <= P_RIGHT_EXACT_MAX_N {
        pb_distribution(model.frequencies())?.p_right(threshold)
    } else {
        f64::NAN
    };
    let predicted = predicted_drift(model, threshold)?;
    let est = empirical_drift(model, f, threshold, samples, rng)?;
    Ok(DriftRow {
        n,
        k_value: model.k(),
        snapshot_id,
        potential: model.potential(),
        variance: model.sampling_variance(),
        p_right_exact,
        drift_empirical: est.mean,
        drift_stderr: est.stderr,
        drift_predicted: predicted.drift_total,
        prob_m_empirical: est.prob(EventClass::M),
    })
}

/// One independent run per snapshot: run Cliff from the uniform model
/// until the potential enters the drift interval, freeze it, and compare
/// the Monte-Carlo drift with the prediction and the exact event law.
pub fn drift_experiment(cfg: &ExperimentConfig) -> Result<DriftOutcome> {
    if cfg.kind != ExperimentKind::Drift {
        return Err(Error::Config(format!("expected a drift config, got {}", cfg.kind)));
    }
    cfg.validate()?;
    let mut outcome = DriftOutcome::default();
    for (n, spec, k) in cfg.grid() {
        let f = UnitationFunction::new(cfg.fitness, n)?;
        if cfg.progress {
            eprintln!(
                "drift: n={n} K={spec} ({k:.4}): {} snapshots x {} samples",
                cfg.runs, cfg.samples
            );
        }
        let group = par_map(cfg.jobs, (0..cfg.runs).collect(), |id| -> Result<Option<DriftRow>> {
            let mut rng = rng_from_seed(cfg.row_seed(n, k, id));
            let mut model = FrequencyModel::new(n, k)?;
            if !run_to_drift_interval(&mut model, &f, &mut rng, cfg.budget, cfg.epsilon) {
                return Ok(None);
            }
            model.refresh();
            measure_snapshot(&model, &f, cfg.samples, id, &mut rng).map(Some)
        })?;
        for (id, row) in group.into_iter().enumerate() {
            match row? {
                Some(row) => outcome.rows.push(row),
                None => outcome.not_reached.push((n, k, id as u64)),
            }
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::KSpec;

    #[test]
    fn interval_bounds() {
        let (lo, hi) = drift_interval(300, 25.0, 0.0);
        assert_eq!((lo, hi), (195.0, 200.0));
        let (lo, _) = drift_interval(300, 16.0, 0.25);
        assert!((lo - 198.0).abs() < 1e-12);
    }

    #[test]
    fn snapshots_lie_in_interval() {
        let mut cfg = ExperimentConfig::new(ExperimentKind::Drift);
        cfg.n_values = vec![60];
        cfg.k_spec = vec![KSpec::PowerOfN(0.45)];
        cfg.runs = 4;
        cfg.samples = 2_000;
        cfg.epsilon = 0.0;
        let out = drift_experiment(&cfg).unwrap();
        assert!(out.not_reached.is_empty());
        assert_eq!(out.rows.len(), 4);
        for r in &out.rows {
            let (lo, hi) = drift_interval(60, r.variance, 0.0);
            assert!(r.potential >= lo && r.potential <= hi, "{r:?}");
            assert!((0.0..=1.0).contains(&r.p_right_exact));
        }
    }

    #[test]
    fn outside_interval_is_not_a_snapshot() {
        let n = 30;
        let f = UnitationFunction::cliff(n).unwrap();
        let mut model = FrequencyModel::from_frequencies(
            (0..n).map(|i| if i < 10 { 0.5 } else { 0.125 }).collect(),
            1e12,
        )
        .unwrap();
        let v = model.sampling_variance();
        assert!(model.potential() <= 20.0 - 5.0 * v.sqrt());
        assert!(!run_to_drift_interval(&mut model, &f, &mut rng_from_seed(1), 100, 0.0));
    }

    #[test]
    fn unreachable_snapshots_are_reported() {
        let mut cfg = ExperimentConfig::new(ExperimentKind::Drift);
        cfg.n_values = vec![30];
        cfg.k_spec = vec![KSpec::Explicit(1e9)];
        cfg.runs = 2;
        cfg.budget = 10;
        cfg.samples = 10;
        let out = drift_experiment(&cfg).unwrap();
        assert!(out.rows.is_empty());
        assert_eq!(out.not_reached, vec![(30, 1e9, 0), (30, 1e9, 1)]);
    }
}
