use cga_lab::analytics::{
    pb_distribution, potential, sampling_variance, truncated_normal_mean, TruncationSide,
};
use cga_lab::rng::rng_from_seed;
use cga_lab::{FrequencyModel, Unitation, UnitationFunction};
use proptest::prelude::*;

/// Brute-force distribution of the number of ones by summing over all 2^n
/// bit strings.
fn enumerate_pb(p: &[f64]) -> Vec<f64> {
    let n = p.len();
    let mut out = vec![0.0; n + 1];
    for mask in 0u32..(1 << n) {
        let mut prob = 1.0;
        for (i, &pi) in p.iter().enumerate() {
            prob *= if mask >> i & 1 == 1 { pi } else { 1.0 - pi };
        }
        out[mask.count_ones() as usize] += prob;
    }
    out
}

fn fitness(cliff: bool, n3: usize) -> UnitationFunction {
    if cliff {
        UnitationFunction::cliff(3 * n3).unwrap()
    } else {
        UnitationFunction::onemax(3 * n3).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frequencies_stay_within_borders(
        n3 in 1usize..15, k in 0.5f64..200.0, seed: u64, cliff: bool,
    ) {
        let f = fitness(cliff, n3);
        let mut model = FrequencyModel::new(f.n(), k).unwrap();
        let (lo, hi) = model.borders();
        let mut rng = rng_from_seed(seed);
        for _ in 0..500 {
            model.step(&f, &mut rng);
            for &p in model.frequencies() {
                prop_assert!(p >= lo && p <= hi, "p={p} outside [{lo}, {hi}]");
            }
        }
    }

    #[test]
    fn one_step_moves_each_frequency_by_at_most_one_over_k(
        n3 in 1usize..15, k in 1.0f64..100.0, seed: u64, warmup in 0usize..200, cliff: bool,
    ) {
        let f = fitness(cliff, n3);
        let mut model = FrequencyModel::new(f.n(), k).unwrap();
        let mut rng = rng_from_seed(seed);
        for _ in 0..warmup {
            model.step(&f, &mut rng);
        }
        let before = model.frequencies().to_vec();
        let mut x = model.sample(&mut rng);
        let mut y = model.sample(&mut rng);
        let rec = model.step_with_offspring(&f, &mut x, &mut y);
        prop_assert!(f.value(x.ones()) >= f.value(y.ones()));
        prop_assert_eq!(rec.ones_x, x.ones());
        let after = model.frequencies();
        for (((&b, &a), &xi), &yi) in before.iter().zip(after).zip(x.bits()).zip(y.bits()) {
            let d = a - b;
            if xi == yi {
                prop_assert_eq!(d, 0.0);
            } else {
                prop_assert!(d.abs() <= 1.0 / k + 1e-12);
                if xi {
                    prop_assert!(d >= 0.0);
                } else {
                    prop_assert!(d <= 0.0);
                }
            }
        }
    }

    #[test]
    fn tracked_potential_and_variance_match_recomputation(
        n3 in 1usize..30, k in 1.0f64..300.0, seed: u64, steps in 1usize..3000,
    ) {
        let f = UnitationFunction::cliff(3 * n3).unwrap();
        let mut model = FrequencyModel::new(f.n(), k).unwrap();
        let mut rng = rng_from_seed(seed);
        for _ in 0..steps {
            let rec = model.step(&f, &mut rng);
            prop_assert!((rec.potential_after - potential(model.frequencies())).abs() <= 1e-9);
            prop_assert!(
                (rec.variance_after - sampling_variance(model.frequencies())).abs() <= 1e-9
            );
            prop_assert!(
                (rec.potential_after - rec.potential_before - rec.delta_potential).abs() <= 1e-12
            );
        }
    }

    #[test]
    fn runs_are_reproducible(n3 in 1usize..8, k in 1.0f64..64.0, seed: u64) {
        let f = UnitationFunction::cliff(3 * n3).unwrap();
        let a = FrequencyModel::new(f.n(), k).unwrap().run_seeded(&f, seed, 20_000).unwrap();
        let b = FrequencyModel::new(f.n(), k).unwrap().run_seeded(&f, seed, 20_000).unwrap();
        prop_assert_eq!(a, b);
        let mut m1 = FrequencyModel::new(f.n(), k).unwrap();
        let mut m2 = FrequencyModel::new(f.n(), k).unwrap();
        let t1 = m1.trace_run(&f, &mut rng_from_seed(seed), 300, 1).unwrap();
        let t2 = m2.trace_run(&f, &mut rng_from_seed(seed), 300, 1).unwrap();
        prop_assert_eq!(t1, t2);
    }

    #[test]
    fn poisson_binomial_matches_enumeration(
        p in prop::collection::vec(0.0f64..=1.0, 1..=16),
    ) {
        let d = pb_distribution(&p).unwrap();
        let brute = enumerate_pb(&p);
        for (a, b) in d.probs().iter().zip(&brute) {
            prop_assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn poisson_binomial_moments(p in prop::collection::vec(0.0f64..=1.0, 1..=256)) {
        let d = pb_distribution(&p).unwrap();
        prop_assert!((d.total() - 1.0).abs() <= 1e-12);
        prop_assert!(d.probs().iter().all(|&q| q >= 0.0));
        prop_assert!((d.mean() - potential(&p)).abs() <= 1e-9);
        prop_assert!((d.variance() - sampling_variance(&p)).abs() <= 1e-9);
    }

    #[test]
    fn truncated_means_are_ordered(
        mu in -50.0f64..50.0, sigma in 0.01f64..20.0, z in -30.0f64..30.0, dz in 0.0f64..5.0,
    ) {
        let t = mu + sigma * z;
        let t2 = mu + sigma * (z + dz);
        let below = truncated_normal_mean(mu, sigma, t, TruncationSide::Below);
        let above = truncated_normal_mean(mu, sigma, t, TruncationSide::Above);
        let slack = 1e-9 * (1.0 + mu.abs() + t.abs());
        prop_assert!(below <= t + slack && below <= mu + slack);
        prop_assert!(above >= t - slack && above >= mu - slack);
        prop_assert!(
            truncated_normal_mean(mu, sigma, t2, TruncationSide::Below) >= below - slack
        );
        prop_assert!(
            truncated_normal_mean(mu, sigma, t2, TruncationSide::Above) >= above - slack
        );
    }
}
