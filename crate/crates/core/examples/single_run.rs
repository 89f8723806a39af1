//! One cGA run on Cliff, with optional arguments `n K seed`.
//!
//! ```text
//! cargo run --example single_run -- 15 128 7
//! ```

use cga_lab::{FrequencyModel, UnitationFunction};

fn main() -> cga_lab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(15, |s| s.parse().expect("n"));
    let k: f64 = args.get(1).map_or(128.0, |s| s.parse().expect("K"));
    let seed: u64 = args.get(2).map_or(7, |s| s.parse().expect("seed"));

    let f = UnitationFunction::cliff(n)?;
    let mut model = FrequencyModel::new(n, k)?;
    let r = model.run_seeded(&f, seed, 100_000_000)?;
    println!(
        "n={n} K={k} seed={seed}: {} evaluations ({} iterations), censored={}",
        r.evaluations, r.iterations, r.censored
    );
    println!("final P={:.3} V={:.3}", r.final_potential, r.final_variance);
    Ok(())
}
