//! Standard normal density, CDF, inverse Mills ratio and truncated means.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Below this argument the inverse Mills ratio switches to the continued
/// fraction for the upper-tail Mills ratio.
const MILLS_CF_SWITCH: f64 = -8.0;
const MILLS_CF_TERMS: u32 = 80;

pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// `Phi(x) = erfc(-x / sqrt 2) / 2`.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

/// Upper-tail Mills ratio `(1 - Phi(z)) / phi(z)` for large positive `z`,
/// from the continued fraction `1/(z + 1/(z + 2/(z + 3/(z + ...))))`.
fn mills_ratio_cf(z: f64) -> f64 {
    let mut acc = z;
    for k in (1..=MILLS_CF_TERMS).rev() {
        acc = z + k as f64 / acc;
    }
    1.0 / acc
}

/// `phi(x) / Phi(x)`.
///
/// Stable for very negative `x`, where it behaves like `-x + 1/(-x)`.
pub fn inverse_mills(x: f64) -> f64 {
    if x < MILLS_CF_SWITCH {
        1.0 / mills_ratio_cf(-x)
    } else {
        normal_pdf(x) / normal_cdf(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TruncationSide {
    /// Condition on `X <= t`.
    Below,
    /// Condition on `X > t`.
    Above,
}

/// Mean of `N(mu, sigma^2)` conditioned on lying below or above `t`.
pub fn truncated_normal_mean(mu: f64, sigma: f64, t: f64, side: TruncationSide) -> f64 {
    let z = (t - mu) / sigma;
    match side {
        TruncationSide::Below => mu - sigma * inverse_mills(z),
        // phi(z) / (1 - Phi(z)) = phi(-z) / Phi(-z)
        TruncationSide::Above => mu + sigma * inverse_mills(-z),
    }
}
