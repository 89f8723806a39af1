//! Small version of the variance experiment: mean final sampling variance
//! on Cliff for K = log n and K = n^0.45, written to CSV.

use cga_lab::experiments::{
    run_experiment, variance_experiment, ExperimentConfig, ExperimentKind, KSpec,
};

fn main() -> cga_lab::Result<()> {
    let mut cfg = ExperimentConfig::new(ExperimentKind::Variance);
    cfg.n_values = vec![30, 60, 120];
    cfg.k_spec = vec![KSpec::LogN, KSpec::PowerOfN(0.45)];
    cfg.runs = 10;
    cfg.output_path = std::env::temp_dir().join("cga-lab-variance.csv");

    let rows = variance_experiment(&cfg)?;
    println!("{:>5} {:>8} {:>8} {:>10} {:>8}", "n", "K", "iters", "mean V", "V/sqrtK");
    for chunk in rows.chunks(cfg.runs as usize) {
        let r = &chunk[0];
        let v = chunk.iter().map(|r| r.variance_final).sum::<f64>() / chunk.len() as f64;
        println!(
            "{:>5} {:>8.3} {:>8} {:>10.3} {:>8.3}",
            r.n,
            r.k_value,
            r.iterations_executed,
            v,
            v / r.k_value.sqrt()
        );
    }

    let report = run_experiment(&cfg)?;
    println!("wrote {} rows to {}", report.rows, report.files[0].display());
    Ok(())
}
