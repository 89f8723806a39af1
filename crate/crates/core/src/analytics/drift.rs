//! Drift of the potential around the cliff.
//!
//! Offspring one-counts are approximated by `N(P, V)`. With `p_R` the
//! probability that an offspring lands beyond the threshold, the two
//! offspring are both left (L), both right (R) or mixed (M) with
//! probabilities `(1-p_R)^2`, `p_R^2`, `2 p_R (1-p_R)`. Under M the left
//! offspring wins, so the potential moves by minus the gap between the two
//! truncated means; under L and R the gain is bounded by `sqrt(2V/pi) / K`.

use rand::Rng;

use super::normal::{normal_cdf, truncated_normal_mean, TruncationSide};
use super::CompensatedSum;
use crate::engine::{Bitstring, EventClass, FrequencyModel};
use crate::error::{Error, Result};
use crate::fitness::Unitation;

#[derive(Clone, Debug, PartialEq)]
pub struct DriftPrediction {
    pub potential: f64,
    pub variance: f64,
    pub k: f64,
    pub threshold: usize,
    /// Normal approximation of `P(X > threshold)`.
    pub p_right: f64,
    pub prob_l: f64,
    pub prob_r: f64,
    pub prob_m: f64,
    /// Expected change of potential under M.
    pub drift_m: f64,
    /// Bound on the expected change under L and under R.
    pub drift_same_slope: f64,
    pub drift_total: f64,
    /// Border effects can shift each conditional drift by at most this much;
    /// not included in the values above.
    pub correction_bound: f64,
}

/// `(P(L), P(R), P(M))` for two independent offspring.
pub fn event_probs(p_right: f64) -> (f64, f64, f64) {
    let q = 1.0 - p_right;
    (q * q, p_right * p_right, 2.0 * p_right * q)
}

/// Drift prediction from potential, variance and update strength.
pub fn predict_drift(
    potential: f64,
    variance: f64,
    k: f64,
    threshold: usize,
) -> Result<DriftPrediction> {
    if !(variance.is_finite() && variance > 0.0) {
        return Err(Error::param(format!(
            "sampling variance must be positive (got {variance})"
        )));
    }
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::param(format!("K must be positive (got {k})")));
    }
    if !potential.is_finite() {
        return Err(Error::param("potential must be finite"));
    }
    let sigma = variance.sqrt();
    let tau = threshold as f64;
    let p_right = 1.0 - normal_cdf((tau - potential) / sigma);
    let (prob_l, prob_r, prob_m) = event_probs(p_right);
    let below = truncated_normal_mean(potential, sigma, tau, TruncationSide::Below);
    let above = truncated_normal_mean(potential, sigma, tau, TruncationSide::Above);
    let drift_m = -(above - below) / k;
    let drift_same_slope = (2.0 / std::f64::consts::PI * variance).sqrt() / k;
    let drift_total = (prob_l + prob_r) * drift_same_slope + prob_m * drift_m;
    Ok(DriftPrediction {
        potential,
        variance,
        k,
        threshold,
        p_right,
        prob_l,
        prob_r,
        prob_m,
        drift_m,
        drift_same_slope,
        drift_total,
        correction_bound: 2.0 / k,
    })
}

/// [`predict_drift`] at the model's current potential and variance.
pub fn predicted_drift(model: &FrequencyModel, threshold: usize) -> Result<DriftPrediction> {
    predict_drift(
        model.potential(),
        model.sampling_variance(),
        model.k(),
        threshold,
    )
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EventStats {
    pub count: u64,
    /// Mean change of potential over steps in this event (0 if none).
    pub mean: f64,
}

/// Monte-Carlo estimate of the one-step drift from a frozen model.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalDrift {
    pub samples: u64,
    pub mean: f64,
    /// Standard error of `mean`.
    pub stderr: f64,
    /// Indexed by [`EventClass::index`].
    pub events: [EventStats; 3],
}

impl EmpiricalDrift {
    pub fn event(&self, e: EventClass) -> EventStats {
        self.events[e.index()]
    }

    /// Fraction of samples falling into `e`.
    pub fn prob(&self, e: EventClass) -> f64 {
        self.event(e).count as f64 / self.samples as f64
    }
}

/// Repeats one cGA step `samples` times from the same state, never changing
/// `model`, and averages the change of potential overall and per event
/// (events relative to `threshold`).
pub fn empirical_drift<F: Unitation + ?Sized, R: Rng + ?Sized>(
    model: &FrequencyModel,
    f: &F,
    threshold: usize,
    samples: u64,
    rng: &mut R,
) -> Result<EmpiricalDrift> {
    if samples == 0 {
        return Err(Error::param("samples must be at least 1"));
    }
    let mut x = Bitstring::zeros(model.n());
    let mut y = Bitstring::zeros(model.n());
    // Welford for the overall mean and variance.
    let mut mean = 0.0;
    let mut m2 = 0.0;
    let mut counts = [0u64; 3];
    let mut sums = [CompensatedSum::default(); 3];
    for i in 0..samples {
        let (delta, event) = model.preview_step(f, rng, &mut x, &mut y, threshold);
        let d = delta - mean;
        mean += d / (i + 1) as f64;
        m2 += d * (delta - mean);
        counts[event.index()] += 1;
        sums[event.index()].add(delta);
    }
    let stderr = if samples > 1 {
        (m2 / (samples - 1) as f64 / samples as f64).sqrt()
    } else {
        0.0
    };
    let mut events = [EventStats::default(); 3];
    for e in EventClass::ALL {
        let i = e.index();
        events[i] = EventStats {
            count: counts[i],
            mean: if counts[i] > 0 {
                sums[i].value() / counts[i] as f64
            } else {
                0.0
            },
        };
    }
    Ok(EmpiricalDrift {
        samples,
        mean,
        stderr,
        events,
    })
}
