//! Analytic quantities for the cGA on unitation functions.
//!
//! Exact oracles (Poisson-binomial law of the one-count, conditional means)
//! sit next to the normal-approximation drift predictor they validate, a
//! Monte-Carlo drift estimator, and the one-step concentration bound.

mod bounds;
mod drift;
mod normal;
mod pb;

pub use bounds::{drift_theorem_exponent, tail_bound, ExponentCheck};
pub use drift::{
    empirical_drift, event_probs, predict_drift, predicted_drift, DriftPrediction, EmpiricalDrift,
    EventStats,
};
pub use normal::{inverse_mills, normal_cdf, normal_pdf, truncated_normal_mean, TruncationSide};
pub use pb::{pb_distribution, PBDistribution};

/// Neumaier-compensated sum.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    #[inline]
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// `P = sum p_i`, the expected one-count of an offspring.
pub fn potential(freqs: &[f64]) -> f64 {
    freqs.iter().copied().collect::<CompensatedSum>().value()
}

/// `V = sum p_i (1 - p_i)`, the variance of an offspring's one-count.
pub fn sampling_variance(freqs: &[f64]) -> f64 {
    freqs
        .iter()
        .map(|&p| p * (1.0 - p))
        .collect::<CompensatedSum>()
        .value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FrequencyModel;

    #[test]
    fn potential_examples() {
        assert_eq!(potential(FrequencyModel::new(10, 3.0).unwrap().frequencies()), 5.0);
        let m = FrequencyModel::from_frequencies(vec![0.9; 10], 3.0).unwrap();
        assert!((m.potential() - 9.0).abs() < 1e-12);
        assert!((potential(&[0.1, 0.5, 0.9]) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn variance_examples() {
        assert_eq!(sampling_variance(&[0.5; 10]), 2.5);
        for n in [3usize, 10, 100] {
            let p = 1.0 / n as f64;
            let v = sampling_variance(&vec![p; n]);
            assert!((v - (1.0 - p)).abs() < 1e-12);
        }
        assert!((sampling_variance(&[0.1, 0.5, 0.9]) - 0.43).abs() < 1e-15);
    }

    #[test]
    fn compensated_sum_beats_naive() {
        let xs = std::iter::once(1.0).chain(std::iter::repeat_n(1e-16, 10_000));
        let s: CompensatedSum = xs.collect();
        assert!((s.value() - (1.0 + 1e-12)).abs() < 1e-18);
    }
}
