//! Exact law of the one-count of an offspring.

use super::CompensatedSum;
use crate::error::{Error, Result};

/// Poisson-binomial distribution: `probs[j] = P(X = j)` for `j = 0..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PBDistribution {
    probs: Vec<f64>,
}

/// Exact distribution of a sum of independent Bernoulli(`freqs[i]`)
/// variables via the O(n^2) convolution recurrence.
pub fn pb_distribution(freqs: &[f64]) -> Result<PBDistribution> {
    if let Some((i, p)) = freqs
        .iter()
        .enumerate()
        .find(|(_, p)| !(0.0..=1.0).contains(*p))
    {
        return Err(Error::param(format!("frequency {i} = {p} outside [0, 1]")));
    }
    let n = freqs.len();
    let mut probs = vec![0.0; n + 1];
    probs[0] = 1.0;
    for (k, &p) in freqs.iter().enumerate() {
        let q = 1.0 - p;
        for j in (1..=k + 1).rev() {
            probs[j] = probs[j] * q + probs[j - 1] * p;
        }
        probs[0] *= q;
    }
    Ok(PBDistribution { probs })
}

impl PBDistribution {
    pub fn n(&self) -> usize {
        self.probs.len() - 1
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().copied().collect::<CompensatedSum>().value()
    }

    pub fn mean(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(j, &p)| j as f64 * p)
            .collect::<CompensatedSum>()
            .value()
    }

    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        self.probs
            .iter()
            .enumerate()
            .map(|(j, &p)| (j as f64 - mean).powi(2) * p)
            .collect::<CompensatedSum>()
            .value()
    }

    /// `P(X > threshold)`.
    pub fn p_right(&self, threshold: usize) -> f64 {
        self.probs
            .iter()
            .skip(threshold.saturating_add(1))
            .copied()
            .collect::<CompensatedSum>()
            .value()
    }

    fn conditional_mean(&self, range: std::ops::Range<usize>, what: &str) -> Result<f64> {
        let mut mass = CompensatedSum::default();
        let mut first = CompensatedSum::default();
        for j in range {
            mass.add(self.probs[j]);
            first.add(j as f64 * self.probs[j]);
        }
        let mass = mass.value();
        if mass <= 0.0 {
            return Err(Error::EmptyEvent(what.to_string()));
        }
        Ok(first.value() / mass)
    }

    /// `E[X | X <= threshold]`.
    pub fn conditional_mean_below(&self, threshold: usize) -> Result<f64> {
        let end = threshold.min(self.n()) + 1;
        self.conditional_mean(0..end, &format!("X <= {threshold}"))
    }

    /// `E[X | X > threshold]`.
    pub fn conditional_mean_above(&self, threshold: usize) -> Result<f64> {
        let start = threshold.saturating_add(1).min(self.n() + 1);
        self.conditional_mean(start..self.n() + 1, &format!("X > {threshold}"))
    }

    /// `(E[X | X <= threshold], E[X | X > threshold])`; both events must
    /// have positive probability.
    pub fn exact_conditional_means(&self, threshold: usize) -> Result<(f64, f64)> {
        Ok((
            self.conditional_mean_below(threshold)?,
            self.conditional_mean_above(threshold)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_binomial() {
        let d = pb_distribution(&[0.5, 0.5, 0.5]).unwrap();
        assert_eq!(d.probs(), &[0.125, 0.375, 0.375, 0.125]);
    }

    #[test]
    fn two_factor_convolution() {
        // (0.9 + 0.1 s)(0.5 + 0.5 s) = 0.45 + 0.50 s + 0.05 s^2
        let d = pb_distribution(&[0.1, 0.5]).unwrap();
        for (got, want) in d.probs().iter().zip([0.45, 0.50, 0.05]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn p_right_examples() {
        let d = pb_distribution(&[0.5; 3]).unwrap();
        assert_eq!(d.p_right(2), 0.125);
        assert_eq!(d.p_right(3), 0.0);
    }

    #[test]
    fn conditional_means() {
        let d = pb_distribution(&[0.5; 3]).unwrap();
        let (below, above) = d.exact_conditional_means(1).unwrap();
        assert!((below - 0.75).abs() < 1e-15);
        // (2 * 3/8 + 3 * 1/8) / (4/8)
        assert!((above - 2.25).abs() < 1e-15);
        assert!((d.conditional_mean_below(3).unwrap() - d.mean()).abs() < 1e-15);
        assert!(matches!(
            d.exact_conditional_means(3),
            Err(Error::EmptyEvent(_))
        ));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(pb_distribution(&[0.5, 1.5]).is_err());
        assert!(pb_distribution(&[-0.1]).is_err());
        assert!(pb_distribution(&[f64::NAN]).is_err());
    }

    #[test]
    fn degenerate_frequencies() {
        let d = pb_distribution(&[1.0, 1.0, 0.0]).unwrap();
        assert_eq!(d.probs(), &[0.0, 0.0, 1.0, 0.0]);
        assert!(pb_distribution(&[]).unwrap().probs() == [1.0]);
    }
}
