//! One-step concentration of the potential and the exponent arithmetic of
//! the negative drift theorem with scaling.

/// Upper bound on `P(|P_{t+1} - P_t| >= lambda / K)`:
/// `2 exp(-(1/3) min(lambda^2 / V, lambda))`. May exceed 1.
pub fn tail_bound(lambda: f64, variance: f64) -> f64 {
    2.0 * (-(lambda * lambda / variance).min(lambda) / 3.0).exp()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExponentCheck {
    /// `eps * ell / (132 r^2)`.
    pub exponent: f64,
    /// `1 <= r^2` and, unless vacuous, `r^2 <= eps * ell / (132 ln(r / eps))`.
    pub condition3_ok: bool,
    /// `ln(r / eps) <= 0`, so the upper bound on `r^2` imposes nothing.
    pub upper_bound_vacuous: bool,
}

/// Exponent of the hitting-time bound for drift `eps`, interval length
/// `ell` and step scale `r`, plus the scaling condition on `r`.
pub fn drift_theorem_exponent(eps: f64, ell: f64, r: f64) -> ExponentCheck {
    let r2 = r * r;
    let exponent = eps * ell / (132.0 * r2);
    let log_ratio = (r / eps).ln();
    let upper_bound_vacuous = log_ratio <= 0.0;
    let upper_ok = upper_bound_vacuous || r2 <= eps * ell / (132.0 * log_ratio);
    ExponentCheck {
        exponent,
        condition3_ok: r2 >= 1.0 && upper_ok,
        upper_bound_vacuous,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_bound_examples() {
        assert_eq!(tail_bound(0.0, 5.0), 2.0);
        assert!((tail_bound(3.0, 1.0) - 2.0 * (-1.0f64).exp()).abs() < 1e-15);
        assert!((tail_bound(3.0, 1.0) - 0.735_758_882_342_884_6).abs() < 1e-15);
        let b = tail_bound(2.0, 16.0);
        assert!((b - 2.0 * (-1.0f64 / 12.0).exp()).abs() < 1e-15);
        assert!((b - 1.840).abs() < 1e-3);
    }

    #[test]
    fn tail_bound_is_decreasing_in_lambda() {
        let mut prev = f64::INFINITY;
        for i in 0..200 {
            let b = tail_bound(i as f64 * 0.25, 7.0);
            assert!(b <= prev);
            prev = b;
        }
    }

    #[test]
    fn exponent_examples() {
        let c = drift_theorem_exponent(1.0, 132.0, 1.0);
        assert_eq!(c.exponent, 1.0);
        assert!(c.condition3_ok);
        assert!(c.upper_bound_vacuous);

        let c = drift_theorem_exponent(2.0, 264.0, 2.0);
        assert_eq!(c.exponent, 1.0);

        let c = drift_theorem_exponent(0.1, 1e6, 0.5);
        assert!(!c.condition3_ok);
    }

    #[test]
    fn scaling_condition_upper_bound() {
        // ln(4 / 0.5) = ln 8; bound = 0.5 * ell / (132 ln 8)
        let ell_ok = 16.0 * 132.0 * 8f64.ln() / 0.5 * 1.01;
        assert!(drift_theorem_exponent(0.5, ell_ok, 4.0).condition3_ok);
        assert!(!drift_theorem_exponent(0.5, ell_ok / 1.1, 4.0).condition3_ok);
        assert!(!drift_theorem_exponent(0.5, ell_ok, 4.0).upper_bound_vacuous);
    }
}
