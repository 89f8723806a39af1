//! Predicted one-step drift of the potential as it approaches the cliff,
//! and a Monte-Carlo check at one frozen model.

use cga_lab::analytics::{empirical_drift, predict_drift, predicted_drift};
use cga_lab::rng::rng_from_seed;
use cga_lab::{EventClass, FrequencyModel, UnitationFunction};

fn main() -> cga_lab::Result<()> {
    let (n, k, v) = (300usize, 100.0, 25.0);
    let tau = 2 * n / 3;
    println!("n={n} K={k} V={v}");
    println!("{:>8} {:>8} {:>10} {:>12}", "P", "p_R", "prob_M", "drift");
    for offset in [-15.0, -10.0, -5.0, -2.5, 0.0, 2.5, 5.0] {
        let p = predict_drift(tau as f64 + offset, v, k, tau)?;
        println!(
            "{:>8.1} {:>8.4} {:>10.4} {:>12.6}",
            p.potential, p.p_right, p.prob_m, p.drift_total
        );
    }

    // A model whose potential sits a little below the cliff.
    let freqs: Vec<f64> = (0..n).map(|i| if i < 2 * n / 3 { 0.95 } else { 0.07 }).collect();
    let model = FrequencyModel::from_frequencies(freqs, 20.0)?;
    let f = UnitationFunction::cliff(n)?;
    let pred = predicted_drift(&model, tau)?;
    let emp = empirical_drift(&model, &f, tau, 200_000, &mut rng_from_seed(8))?;
    println!(
        "\nfrozen model P={:.2} V={:.2} K=20",
        model.potential(),
        model.sampling_variance()
    );
    println!("predicted {:.5} (+/- {:.3})", pred.drift_total, pred.correction_bound);
    println!("empirical {:.5} +/- {:.5}", emp.mean, emp.stderr);
    for e in EventClass::ALL {
        println!("  {e}: freq {:.4}, mean change {:.5}", emp.prob(e), emp.event(e).mean);
    }
    Ok(())
}
