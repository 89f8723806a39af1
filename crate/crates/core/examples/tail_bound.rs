//! Concentration of the one-step change of the potential, and the
//! exponent of the negative-drift theorem for a few parameter choices.

use cga_lab::analytics::{drift_theorem_exponent, tail_bound};

fn main() {
    println!("P(|change| >= lambda/K) <= tail_bound(lambda, V)");
    print!("{:>6}", "V");
    let lambdas = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0];
    for l in lambdas {
        print!(" {:>10}", format!("l={l}"));
    }
    println!();
    for v in [1.0, 4.0, 16.0, 64.0] {
        print!("{v:>6}");
        for l in lambdas {
            print!(" {:>10.3e}", tail_bound(l, v).min(1.0));
        }
        println!();
    }

    println!("\n{:>6} {:>8} {:>6} {:>12} {:>6}", "eps", "ell", "r", "exponent", "ok");
    for (eps, ell, r) in [(0.5, 1056.0, 2.0), (0.1, 1e4, 1.5), (0.1, 100.0, 5.0), (1.0, 132.0, 0.5)] {
        let c = drift_theorem_exponent(eps, ell, r);
        println!(
            "{eps:>6} {ell:>8} {r:>6} {:>12.4} {:>6}{}",
            c.exponent,
            c.condition3_ok,
            if c.upper_bound_vacuous { " (upper bound vacuous)" } else { "" }
        );
    }
}
