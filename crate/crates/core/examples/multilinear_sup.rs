//! Sups of random polynomials and forms on l_p balls next to the
//! constant-free right-hand sides they are compared with.

use kszlab::polys::{
    ksz_rhs_bound, spectral_norm_real, sup_ball, sup_multilinear, Flavor, MultilinearForm, RhsParams, RhsTheorem,
    SearchStrategy, SparsePoly,
};
use kszlab::subgaussian::{draw_batch, GeneratorSpec};
use kszlab::Complex64;

fn main() -> kszlab::Result<()> {
    let spec = GeneratorSpec::rademacher();

    println!("random bilinear forms on l_2 x l_2");
    for n in [8usize, 16, 32, 64] {
        let draws = draw_batch(spec, n * n, 11, n as u64)?;
        let entries: Vec<f64> = draws.values.iter().map(|z| z.re).collect();
        let norm = spectral_norm_real(n, n, &entries);
        let form = MultilinearForm::bilinear_real(n, n, &entries)?;
        let search = sup_multilinear(&form, &[2.0, 2.0], SearchStrategy::MultistartSearch)?;
        let rhs = ksz_rhs_bound(
            RhsTheorem::Gurgel,
            &RhsParams {
                n: Some(n as f64),
                r: Some(2.0),
                p: Some(vec![2.0, 2.0]),
                ..Default::default()
            },
        )?;
        println!("  n = {n:>3}: spectral {norm:>8.4}, search {:>8.4}, rhs {rhs:>8.4}", search.lower);
    }

    println!("random quadratic forms on the cube");
    for n in [4usize, 8, 12] {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let signs = draw_batch(spec, pairs.len(), 13, n as u64)?;
        let terms = pairs.iter().zip(&signs.values).map(|(&(i, j), c)| {
            let mut alpha = vec![0; n];
            alpha[i] = 1;
            alpha[j] = 1;
            (alpha, *c)
        });
        let q = SparsePoly::new(n, Flavor::Monomial, terms)?;
        let exact = sup_ball(&q, f64::INFINITY, SearchStrategy::VertexExact)?;
        let rhs = ksz_rhs_bound(
            RhsTheorem::Analog,
            &RhsParams {
                n: Some(n as f64),
                m: Some(2.0),
                p: Some(vec![f64::INFINITY]),
                ..Default::default()
            },
        )?;
        println!("  n = {n:>3}: exact sup {:>8.4}, rhs {rhs:>8.4}", exact.lower);
    }

    let rank_one = MultilinearForm::bilinear(2, 2, vec![Complex64::new(1.0, 0.0); 4])?;
    let est = sup_multilinear(&rank_one, &[f64::INFINITY, f64::INFINITY], SearchStrategy::VertexExact)?;
    println!("all-ones 2x2 form on l_inf x l_inf: {:.4}", est.lower);
    Ok(())
}
