//! Snapshots of runs whose potential has just reached the cliff region,
//! with measured and predicted drift side by side.

use cga_lab::experiments::{drift_experiment, ExperimentConfig, ExperimentKind, KSpec};

fn main() -> cga_lab::Result<()> {
    let mut cfg = ExperimentConfig::new(ExperimentKind::Drift);
    cfg.n_values = vec![150];
    cfg.k_spec = vec![KSpec::PowerOfN(0.45)];
    cfg.runs = 8;
    cfg.samples = 50_000;

    let out = drift_experiment(&cfg)?;
    println!(
        "{:>3} {:>9} {:>7} {:>8} {:>11} {:>9} {:>10}",
        "id", "P", "V", "p_R", "empirical", "stderr", "predicted"
    );
    for r in &out.rows {
        println!(
            "{:>3} {:>9.3} {:>7.3} {:>8.4} {:>11.5} {:>9.5} {:>10.5}",
            r.snapshot_id,
            r.potential,
            r.variance,
            r.p_right_exact,
            r.drift_empirical,
            r.drift_stderr,
            r.drift_predicted
        );
    }
    if !out.not_reached.is_empty() {
        println!("{} snapshots never reached the interval", out.not_reached.len());
    }
    Ok(())
}
