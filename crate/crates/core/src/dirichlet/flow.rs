use num_complex::Complex64;
use rayon::prelude::*;

use super::{lift_with_stats, prime_stats, DirichletPoly};
use crate::error::{invalid, Result};
use crate::polys::{SupEstimate, SupMethod};
use crate::subgaussian::{stream_rng, GeneratorKind};

pub const DEFAULT_FLOW_T_MAX: f64 = 1e4;

/// Horizon of the flow scan that seeds [`sup_lifted`].
const LIFT_SEED_T_MAX: f64 = 1e3;

/// Default flow step `π / (4 log max A)`.
pub fn default_step(d: &DirichletPoly) -> f64 {
    let top = d.max_index().unwrap_or(1).max(2) as f64;
    std::f64::consts::PI / (4.0 * top.ln())
}

/// Max of `|Σ a_n n^{-it}|` over `t ∈ {0, step, 2·step, …} ∩ [0, t_max]`.
///
/// The phases are advanced by complex rotation and resynchronized from the
/// exact angle every few hundred steps. The witness is the flow time `t`
/// stored as a real number.
pub fn kronecker_sup_flow(d: &DirichletPoly, t_max: f64, step: f64) -> Result<SupEstimate> {
    if d.is_empty() {
        return invalid("kronecker_sup_flow: Dirichlet polynomial is empty");
    }
    if !(t_max > 0.0) || !(step > 0.0) {
        return invalid("kronecker_sup_flow: t_max and step must be positive");
    }
    let top = d.max_index().unwrap_or(1);
    if top > 1 {
        let required = std::f64::consts::PI / (top as f64).ln();
        if step > required {
            return invalid(format!(
                "kronecker_sup_flow: step {step} is too coarse; phases up to log {top} need step <= {required}"
            ));
        }
    }
    let (best, k) = flow_scan(d, t_max, step);
    Ok(SupEstimate::lower_only(
        best,
        SupMethod::KroneckerFlow,
        vec![Complex64::new(k as f64 * step, 0.0)],
    ))
}

/// `(max value, grid index)`; ties resolve to the smallest index.
fn flow_scan(d: &DirichletPoly, t_max: f64, step: f64) -> (f64, u64) {
    const CHUNK: u64 = 4096;
    const RESYNC: u64 = 256;
    let count = (t_max / step).floor() as u64 + 1;
    let freqs: Vec<f64> = d.coeffs().keys().map(|n| (*n as f64).ln()).collect();
    let amps: Vec<Complex64> = d.coeffs().values().copied().collect();
    let rot: Vec<Complex64> = freqs.iter().map(|f| Complex64::from_polar(1.0, -step * f)).collect();
    (0..count.div_ceil(CHUNK))
        .into_par_iter()
        .map(|ci| {
            let start = ci * CHUNK;
            let end = (start + CHUNK).min(count);
            let mut phase: Vec<Complex64> = Vec::new();
            let mut best = (f64::NEG_INFINITY, start);
            for k in start..end {
                if (k - start).is_multiple_of(RESYNC) {
                    let t = k as f64 * step;
                    phase = amps
                        .iter()
                        .zip(&freqs)
                        .map(|(a, f)| a * Complex64::from_polar(1.0, -t * f))
                        .collect();
                } else {
                    for (ph, r) in phase.iter_mut().zip(&rot) {
                        *ph *= r;
                    }
                }
                let v = phase.iter().sum::<Complex64>().norm();
                if v > best.0 {
                    best = (v, k);
                }
            }
            best
        })
        .reduce(
            || (f64::NEG_INFINITY, u64::MAX),
            |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a },
        )
}

/// Lower bound on the sup of the Bohr lift over `T^{Π(A)}`.
///
/// Candidates are `sampler_budget` random torus points together with the
/// best point of a short Kronecker-flow scan; the top candidates are refined
/// by coordinatewise circle ascent.
pub fn sup_lifted(d: &DirichletPoly, sampler_budget: usize) -> Result<SupEstimate> {
    if sampler_budget == 0 {
        return invalid("sup_lifted: sampler_budget must be at least 1");
    }
    if d.is_empty() {
        return invalid("sup_lifted: Dirichlet polynomial is empty");
    }
    let stats = prime_stats(&d.support())?;
    let lifted = lift_with_stats(d, &stats)?;
    let n = lifted.n();
    if n == 0 {
        let v = lifted.coeff(&[]).norm();
        return Ok(SupEstimate::lower_only(v, SupMethod::MultistartSearch, Vec::new()));
    }
    let primes = super::primes::first_primes(n);

    let (_, k) = flow_scan(d, LIFT_SEED_T_MAX, default_step(d));
    let t = k as f64 * default_step(d);
    let seed_point: Vec<Complex64> = primes
        .iter()
        .map(|p| Complex64::from_polar(1.0, -t * (*p as f64).ln()))
        .collect();

    let mut rng = stream_rng(0x5eed_11f7, 0);
    let mut candidates: Vec<(f64, Vec<Complex64>)> = Vec::with_capacity(sampler_budget + 1);
    let eval = |z: &[Complex64]| crate::polys::eval_poly(&lifted, z).map(|v| v.norm()).unwrap_or(0.0);
    candidates.push((eval(&seed_point), seed_point));
    for _ in 0..sampler_budget {
        let z: Vec<Complex64> = (0..n).map(|_| GeneratorKind::SteinhausComplex.sample(&mut rng)).collect();
        candidates.push((eval(&z), z));
    }
    candidates.sort_by(|a, b| b.0.total_cmp(&a.0));
    candidates.truncate(8);
    let refined: Vec<(f64, Vec<Complex64>)> = candidates
        .into_par_iter()
        .map(|(_, mut z)| {
            let v = crate::polys::circle_ascent(&lifted, &mut z, 200, 1e-10);
            (v, z)
        })
        .collect();
    let (lower, witness) = refined
        .into_iter()
        .fold((f64::NEG_INFINITY, Vec::new()), |a, b| if b.0 > a.0 { b } else { a });
    Ok(SupEstimate::lower_only(lower, SupMethod::MultistartSearch, witness))
}
