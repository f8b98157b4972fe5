//! Dirichlet polynomials: prime statistics, the Bohr lift and the
//! Kronecker flow.

use kszlab::dirichlet::{
    bohr_lift, costa_pereira_check, dirichlet_rhs_bound, kronecker_sup_flow, prime_stats, sup_lifted, unlift,
    DirichletPoly, DEFAULT_FLOW_T_MAX,
};
use kszlab::polys::sup_torus;
use kszlab::subgaussian::{draw_batch, GeneratorSpec};

fn main() -> kszlab::Result<()> {
    let n = 60u64;
    let signs = draw_batch(GeneratorSpec::rademacher(), n as usize, 3, 0)?;
    let d = DirichletPoly::new((1..=n).zip(signs.values))?;

    let stats = prime_stats(&d.support())?;
    println!("support 1..={n}: pi = {}, omega = {}", stats.pi, stats.omega);
    println!("rhs factor (r = 2): {:.4}", dirichlet_rhs_bound(&d.support(), 2.0)?);

    let lifted = bohr_lift(&d)?;
    println!("lift: {} variables, degree {}, {} terms", lifted.n(), lifted.degree(), lifted.term_count());
    assert_eq!(unlift(&lifted)?, d);

    let flow = kronecker_sup_flow(&d, DEFAULT_FLOW_T_MAX, kszlab::dirichlet::default_step(&d))?;
    println!("flow sup over t <= {DEFAULT_FLOW_T_MAX}: {:.4} (at t = {:.2})", flow.lower, flow.witness[0].re);
    let torus = sup_lifted(&d, 4096)?;
    println!("sup over the lifted torus:    {:.4}", torus.lower);

    // small primes only: the grid bracket is affordable
    let small = DirichletPoly::new([(1, 1.0), (2, 1.0), (3, -1.0), (6, 1.0)].map(|(n, a)| (n, a.into())))?;
    let grid = sup_torus(&bohr_lift(&small)?, 8)?;
    println!("1 + 2^-s - 3^-s + 6^-s: torus sup in [{:.4}, {:.4}]", grid.lower, grid.upper.unwrap_or(f64::NAN));

    for x in [10.0, 1e3, 1e6] {
        let c = costa_pereira_check(x)?;
        println!("pi({x}) = {} in [{:.1}, {:.1}]", c.pi_exact, c.lower, c.upper);
    }
    Ok(())
}
