//! Exact distribution of the number of ones, and how the normal
//! approximation of its tails and conditional means compares.

use cga_lab::analytics::{normal_cdf, pb_distribution, truncated_normal_mean, TruncationSide};

fn main() -> cga_lab::Result<()> {
    let d = pb_distribution(&[0.1, 0.5, 0.9])?;
    println!("freqs [0.1, 0.5, 0.9]: {:?}", d.probs());
    println!("mean {} variance {}", d.mean(), d.variance());

    let n = 60;
    let d = pb_distribution(&vec![2.0 / 3.0; n])?;
    let (mu, sigma) = (d.mean(), d.variance().sqrt());
    println!("\nn={n}, all frequencies 2/3: mean {mu:.4}, sd {sigma:.4}");
    println!("{:>4} {:>10} {:>10} {:>10} {:>10}", "t", "P(X>t)", "normal", "E[X|X<=t]", "normal");
    for t in [34, 37, 40, 43, 46] {
        let exact_tail = d.p_right(t);
        // Half-unit shift between integer counts and the continuous cut.
        let cut = t as f64 + 0.5;
        let normal_tail = 1.0 - normal_cdf((cut - mu) / sigma);
        let below = d.conditional_mean_below(t)?;
        let normal_below = truncated_normal_mean(mu, sigma, cut, TruncationSide::Below);
        println!("{t:>4} {exact_tail:>10.6} {normal_tail:>10.6} {below:>10.4} {normal_below:>10.4}");
    }
    Ok(())
}
