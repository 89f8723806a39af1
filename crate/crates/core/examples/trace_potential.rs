//! Potential and sampling variance along a long run on Cliff, printed
//! every 1000 iterations next to the cliff position 2n/3.

use cga_lab::rng::rng_from_seed;
use cga_lab::{FrequencyModel, UnitationFunction};

fn main() -> cga_lab::Result<()> {
    let n = 300;
    let k = (n as f64).powf(0.45);
    let f = UnitationFunction::cliff(n)?;
    let mut model = FrequencyModel::new(n, k)?;
    let trace = model.trace_run(&f, &mut rng_from_seed(3), 30_000, 1000)?;

    println!("cliff at {}", f.cliff_threshold());
    println!("{:>6} {:>9} {:>8} {:>6}", "t", "P", "V", "event");
    for rec in &trace {
        println!(
            "{:>6} {:>9.3} {:>8.3} {:>6}",
            rec.t, rec.potential_after, rec.variance_after, rec.event_class
        );
    }
    Ok(())
}
