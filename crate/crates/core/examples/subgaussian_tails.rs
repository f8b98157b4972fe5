//! Empirical tails of a normalized Rademacher sum against the subgaussian bound.

use kszlab::norms::{orlicz_empirical_norm, pmoment_orlicz_estimate, EmpiricalSample, OrliczExponent};
use kszlab::subgaussian::{draw_batch, sg_sum_bound, tail_bound, GeneratorSpec};

fn main() -> kszlab::Result<()> {
    let spec = GeneratorSpec::rademacher();
    let n = 64;
    let trials = 20_000;
    let sums: Vec<f64> = (0..trials)
        .map(|k| {
            let b = draw_batch(spec, n, 2024, k)?;
            Ok(b.values.iter().map(|z| z.re).sum::<f64>() / (n as f64).sqrt())
        })
        .collect::<kszlab::Result<_>>()?;

    // the sum of n unit subgaussians, scaled by n^{-1/2}
    let sg = sg_sum_bound(&vec![1.0; n])? / (n as f64).sqrt();
    println!("subgaussian constant of the normalized sum: {sg:.4}");
    println!("{:>5} {:>12} {:>12}", "t", "empirical", "bound");
    for t in [0.5, 1.0, 1.5, 2.0, 2.5, 3.0] {
        let hits = sums.iter().filter(|s| s.abs() > t).count();
        println!("{t:>5} {:>12.5} {:>12.5}", hits as f64 / trials as f64, tail_bound(&spec, sg, t)?);
    }

    let sample = EmpiricalSample::new(sums.iter().map(|s| s.abs()).collect())?;
    let r = OrliczExponent::new(2.0)?;
    println!("empirical psi_2 norm: {:.4}", orlicz_empirical_norm(&sample, r));
    println!("moment estimate:      {:.4}", pmoment_orlicz_estimate(&sample, r, 16.0)?);
    Ok(())
}
