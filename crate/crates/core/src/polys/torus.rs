use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use super::sparse::{eval_poly, SparsePoly};
use super::{SupEstimate, SupMethod, DEFAULT_EVAL_BUDGET};
use crate::error::{Error, Result};
use crate::subgaussian::{stream_rng, GeneratorKind};

/// Points per axis at which a uniform torus grid meets the Bernstein density
/// for degree `m`: `1 + 20m`.
pub fn bernstein_points_per_axis(m: u32) -> u64 {
    1 + 20 * m as u64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusOptions {
    pub grid_factor: u32,
    /// Enlarge the grid to the Bernstein density so that `upper = 2·lower`.
    pub certify: bool,
    pub budget: u64,
}

impl Default for TorusOptions {
    fn default() -> Self {
        TorusOptions {
            grid_factor: 8,
            certify: true,
            budget: DEFAULT_EVAL_BUDGET,
        }
    }
}

/// Values of `Σ_e b_e ω^{j e}` for `ω = e^{2πi/G}`, `j = 0..G`.
///
/// Exponents are folded modulo `G`, which is exact on the grid.
fn circle_values(coeffs: &[(i64, Complex64)], grid: usize) -> Vec<Complex64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); grid];
    for (e, b) in coeffs {
        buf[e.rem_euclid(grid as i64) as usize] += *b;
    }
    if grid > 1 {
        // inverse transform carries the e^{+2πi jk/G} kernel, unnormalized
        let fft = FftPlanner::<f64>::new().plan_fft_inverse(grid);
        fft.process(&mut buf);
    }
    buf
}

/// Maximum modulus of a one-variable Laurent polynomial on the `grid`-point
/// roots-of-unity grid, with the first grid index attaining it.
pub fn circle_sup(coeffs: &[(i64, Complex64)], grid: usize) -> (f64, usize) {
    let vals = circle_values(coeffs, grid.max(1));
    let mut best = (f64::NEG_INFINITY, 0usize);
    for (j, v) in vals.iter().enumerate() {
        let m = v.norm();
        if m > best.0 {
            best = (m, j);
        }
    }
    best
}

fn grid_points(p: &SparsePoly, opts: &TorusOptions) -> u64 {
    let m = p.degree();
    let base = opts.grid_factor as u64 * m as u64 + 1;
    if opts.certify {
        base.max(bernstein_points_per_axis(m))
    } else {
        base
    }
}

pub fn sup_torus(p: &SparsePoly, grid_factor: u32) -> Result<SupEstimate> {
    sup_torus_with(
        p,
        &TorusOptions {
            grid_factor,
            ..TorusOptions::default()
        },
    )
}

/// Maximum of `|P|` over a uniform tensor grid of the torus `T^n`.
///
/// With `certify` the grid has at least `1 + 20m` points per axis and the
/// estimate carries `upper = 2·lower`. One-variable polynomials are
/// evaluated on the grid by a single FFT.
pub fn sup_torus_with(p: &SparsePoly, opts: &TorusOptions) -> Result<SupEstimate> {
    let n = p.n();
    let g = grid_points(p, opts);
    let total = (g as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > opts.budget as u128 {
        return Err(Error::Budget(format!(
            "torus grid of {g}^{n} points exceeds the budget of {} evaluations; use sample_torus for a lower bound",
            opts.budget
        )));
    }
    let certified = opts.certify || g >= bernstein_points_per_axis(p.degree());
    let g = g as usize;
    let roots: Vec<Complex64> = (0..g).map(|j| Complex64::from_polar(1.0, TAU * j as f64 / g as f64)).collect();

    if p.term_count() == 0 {
        let witness = vec![Complex64::new(1.0, 0.0); n];
        return Ok(SupEstimate::exact(0.0, SupMethod::TorusGridBernstein, witness));
    }

    let (lower, flat) = if n == 0 {
        (p.coeff(&[]).norm(), 0u128)
    } else if n == 1 {
        let coeffs: Vec<(i64, Complex64)> = p.terms().map(|(a, c)| (a.0[0] as i64, *c)).collect();
        let (v, j) = circle_sup(&coeffs, g);
        (v, j as u128)
    } else {
        grid_max(p, &roots, total)
    };

    let mut witness = Vec::with_capacity(n);
    let mut rest = flat;
    for _ in 0..n {
        witness.push(roots[(rest % g as u128) as usize]);
        rest /= g as u128;
    }
    Ok(SupEstimate {
        lower,
        upper: certified.then_some(2.0 * lower),
        method: SupMethod::TorusGridBernstein,
        witness,
    })
}

/// Parallel scan of the full grid; flat index has axis 0 fastest.
/// Ties resolve to the smallest flat index.
fn grid_max(p: &SparsePoly, roots: &[Complex64], total: u128) -> (f64, u128) {
    let g = roots.len() as i64;
    let n = p.n();
    let terms: Vec<(Vec<i64>, Complex64)> = p
        .terms()
        .map(|(a, c)| (a.0.iter().map(|e| *e as i64).collect(), *c))
        .collect();
    let total = total as u64;
    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let start = ci * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut digits = vec![0i64; n];
            let mut rest = start;
            for d in digits.iter_mut() {
                *d = (rest % g as u64) as i64;
                rest /= g as u64;
            }
            let mut best = (f64::NEG_INFINITY, start as u128);
            for flat in start..end {
                let mut acc = Complex64::new(0.0, 0.0);
                for (exps, c) in &terms {
                    let mut t = *c;
                    for (d, e) in digits.iter().zip(exps) {
                        if *e != 0 {
                            t *= roots[(d * e).rem_euclid(g) as usize];
                        }
                    }
                    acc += t;
                }
                let v = acc.norm();
                if v > best.0 {
                    best = (v, flat as u128);
                }
                for d in digits.iter_mut() {
                    *d += 1;
                    if *d < g {
                        break;
                    }
                    *d = 0;
                }
            }
            best
        })
        .reduce(
            || (f64::NEG_INFINITY, u128::MAX),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        )
}

/// Restriction of `P` to coordinate `k` at the point `z`, as a Laurent
/// polynomial in that coordinate.
fn axis_restriction(p: &SparsePoly, z: &[Complex64], k: usize) -> Vec<(i64, Complex64)> {
    let mut out: Vec<(i64, Complex64)> = Vec::new();
    for (alpha, c) in p.terms() {
        let mut b = *c;
        for (l, (zl, e)) in z.iter().zip(&alpha.0).enumerate() {
            if l != k && *e != 0 {
                b *= zl.powi(*e);
            }
        }
        let e = alpha.0[k] as i64;
        match out.iter_mut().find(|(x, _)| *x == e) {
            Some(slot) => slot.1 += b,
            None => out.push((e, b)),
        }
    }
    out
}

fn laurent_modulus(coeffs: &[(i64, Complex64)], theta: f64) -> f64 {
    coeffs
        .iter()
        .map(|(e, b)| b * Complex64::from_polar(1.0, *e as f64 * theta))
        .sum::<Complex64>()
        .norm()
}

/// Golden-section refinement of a grid maximizer within one grid step.
pub(crate) fn refine_angle(coeffs: &[(i64, Complex64)], center: f64, step: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (center - step, center + step);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = laurent_modulus(coeffs, x1);
    let mut f2 = laurent_modulus(coeffs, x2);
    for _ in 0..80 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = laurent_modulus(coeffs, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = laurent_modulus(coeffs, x1);
        }
    }
    let best = 0.5 * (a + b);
    if laurent_modulus(coeffs, best) >= laurent_modulus(coeffs, center) {
        best
    } else {
        center
    }
}

/// Coordinatewise circle ascent on the torus starting from `z`.
pub(crate) fn circle_ascent(p: &SparsePoly, z: &mut [Complex64], max_sweeps: usize, tol: f64) -> f64 {
    let axis_deg = p.axis_degrees();
    let mut value = eval_poly(p, z).map(|v| v.norm()).unwrap_or(0.0);
    for _ in 0..max_sweeps {
        let before = value;
        for k in 0..p.n() {
            let coeffs = axis_restriction(p, z, k);
            let grid = (1 + 40 * axis_deg[k] as usize).max(64);
            let (_, j) = circle_sup(&coeffs, grid);
            let step = TAU / grid as f64;
            let theta = refine_angle(&coeffs, TAU * j as f64 / grid as f64, step);
            let w = Complex64::from_polar(1.0, theta);
            let old = z[k];
            z[k] = w;
            let v = eval_poly(p, z).map(|v| v.norm()).unwrap_or(0.0);
            if v > value {
                value = v;
            } else {
                z[k] = old;
            }
        }
        if value - before <= tol * value.max(f64::MIN_POSITIVE) {
            break;
        }
    }
    value
}

/// Lower bound on `sup_{T^n} |P|` from random torus points refined by
/// coordinatewise circle ascent. No upper bound is certified.
pub fn sample_torus(p: &SparsePoly, samples: usize, seed: u64) -> Result<SupEstimate> {
    let n = p.n();
    let samples = samples.max(1);
    let mut rng = stream_rng(seed, 0);
    let mut pts: Vec<(f64, Vec<Complex64>)> = (0..samples)
        .map(|_| {
            let z: Vec<Complex64> = (0..n).map(|_| GeneratorKind::SteinhausComplex.sample(&mut rng)).collect();
            let v = eval_poly(p, &z).map(|v| v.norm()).unwrap_or(0.0);
            (v, z)
        })
        .collect();
    pts.sort_by(|a, b| b.0.total_cmp(&a.0));
    pts.truncate(8);
    let refined: Vec<(f64, Vec<Complex64>)> = pts
        .into_par_iter()
        .map(|(_, mut z)| {
            let v = circle_ascent(p, &mut z, 200, 1e-10);
            (v, z)
        })
        .collect();
    let (lower, witness) = refined
        .into_iter()
        .fold((f64::NEG_INFINITY, Vec::new()), |a, b| if b.0 > a.0 { b } else { a });
    Ok(SupEstimate::lower_only(lower, SupMethod::MultistartSearch, witness))
}
