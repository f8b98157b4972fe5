//! Sup norms of trigonometric polynomials on the torus: random sampling
//! gives a lower bound, the Bernstein grid a certified bracket.

use kszlab::polys::{bernstein_points_per_axis, sample_torus, sup_torus, Flavor, SparsePoly};
use kszlab::subgaussian::{draw_batch, GeneratorSpec};
use kszlab::Complex64;

fn main() -> kszlab::Result<()> {
    // a random Rademacher polynomial of degree m in two variables
    let m = 6;
    let alphas: Vec<Vec<i32>> = (0..=m).flat_map(|a| (0..=m - a).map(move |b| vec![a, b])).collect();
    let signs = draw_batch(GeneratorSpec::rademacher(), alphas.len(), 7, 0)?;
    let p = SparsePoly::new(2, Flavor::Trig, alphas.into_iter().zip(signs.values))?;
    println!("{} terms of degree {}", p.term_count(), p.degree());

    let sampled = sample_torus(&p, 4096, 1)?;
    println!("4096 random points: lower {:.4}", sampled.lower);

    let grid = sup_torus(&p, 8)?;
    println!(
        "Bernstein grid ({} points per axis): [{:.4}, {:.4}]",
        bernstein_points_per_axis(p.degree()),
        grid.lower,
        grid.upper.unwrap_or(f64::NAN)
    );

    // Salem-Zygmund scale for comparison
    let l2 = (p.term_count() as f64).sqrt();
    let log_term = (1.0 + (m as f64).ln()).sqrt();
    println!("sqrt(#terms * log m) = {:.4}", l2 * log_term);

    let trig = SparsePoly::new(1, Flavor::Trig, [(vec![1], Complex64::new(1.0, 0.0)), (vec![-1], Complex64::new(1.0, 0.0))])?;
    let est = sup_torus(&trig, 8)?;
    println!("sup |2 cos t| = {:.6}", est.lower);
    Ok(())
}
