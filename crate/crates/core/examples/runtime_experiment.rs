//! Optimisation times on Cliff with n=15 as K doubles: the median drops
//! sharply once K is large enough for the cGA to cross the cliff.

use cga_lab::experiments::{reference_values, runtime_experiment, ExperimentConfig, ExperimentKind, KSpec};

fn main() -> cga_lab::Result<()> {
    let mut cfg = ExperimentConfig::new(ExperimentKind::Runtime);
    cfg.n_values = vec![15];
    cfg.k_spec = (0..=10).map(KSpec::PowerOfTwo).collect();
    cfg.runs = 51;

    let rows = runtime_experiment(&cfg)?;
    let (a, b, c) = reference_values(15);
    println!("reference: (3/2)^n = {a:.1}, 2^n = {b}, n^(n/3) = {c}");
    println!("{:>6} {:>10} {:>10} {:>10}", "K", "min", "median", "max");
    for chunk in rows.chunks(cfg.runs as usize) {
        let mut evals: Vec<u64> = chunk.iter().map(|r| r.evaluations).collect();
        evals.sort_unstable();
        println!(
            "{:>6} {:>10} {:>10} {:>10}",
            chunk[0].k_value,
            evals[0],
            evals[evals.len() / 2],
            evals[evals.len() - 1]
        );
    }
    Ok(())
}
