use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::sparse::{eval_poly, SparsePoly};
use super::{dual_maximizer, lp, SearchOptions, SearchStrategy, SupEstimate, SupMethod};
use crate::error::{invalid, Error, Result};
use crate::polys::Flavor;
use crate::subgaussian::{stream_rng, GeneratorKind};

pub(crate) const MAX_VERTEX_DIM: usize = 24;

pub fn sup_ball(p: &SparsePoly, ball_p: f64, strategy: SearchStrategy) -> Result<SupEstimate> {
    sup_ball_with(p, ball_p, strategy, &SearchOptions::default())
}

/// Sup of `|P|` over the closed unit ball of `ℓ_p^n`.
///
/// Real-coefficient polynomials are maximized over the real ball, complex
/// ones over the complex ball.
pub fn sup_ball_with(
    p: &SparsePoly,
    ball_p: f64,
    strategy: SearchStrategy,
    opts: &SearchOptions,
) -> Result<SupEstimate> {
    if !(ball_p >= 1.0) {
        return invalid(format!("sup_ball: p must be >= 1, got {ball_p}"));
    }
    if p.flavor() != Flavor::Monomial {
        return invalid("sup_ball requires a monomial-flavor polynomial");
    }
    match strategy {
        SearchStrategy::VertexExact => vertex_exact(p, ball_p),
        SearchStrategy::MultistartSearch => Ok(multistart(p, ball_p, opts)),
        SearchStrategy::Spectral => invalid("Spectral strategy applies to bilinear forms only"),
    }
}

/// Exact sup over the real cube for multilinear-structure polynomials:
/// `|P|` is convex in each coordinate, so the maximum sits at a vertex.
/// Vertices are walked in Gray-code order with incremental term updates.
fn vertex_exact(p: &SparsePoly, ball_p: f64) -> Result<SupEstimate> {
    if !ball_p.is_infinite() {
        return invalid("VertexExact requires p = infinity");
    }
    if !p.is_real() {
        return invalid("VertexExact requires real coefficients");
    }
    if !p.is_multilinear() {
        return invalid("VertexExact requires every variable to have degree at most 1 in each term");
    }
    let n = p.n();
    if n > MAX_VERTEX_DIM {
        return Err(Error::Budget(format!(
            "VertexExact enumerates 2^{n} vertices; the limit is n <= {MAX_VERTEX_DIM}"
        )));
    }
    let (best, mask) = max_abs_over_cube(p);
    let witness = (0..n)
        .map(|k| Complex64::new(if mask >> k & 1 == 1 { -1.0 } else { 1.0 }, 0.0))
        .collect();
    Ok(SupEstimate::exact(best, SupMethod::VertexExact, witness))
}

/// `(max |P(x)|, sign mask)` over `x ∈ {±1}^n`; bit `k` set means `x_k = −1`.
pub(crate) fn max_abs_over_cube(p: &SparsePoly) -> (f64, u64) {
    let n = p.n();
    let mut terms: Vec<f64> = p.terms().map(|(_, c)| c.re).collect();
    let mut by_var: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (t, (alpha, _)) in p.terms().enumerate() {
        for (k, e) in alpha.0.iter().enumerate() {
            if *e == 1 {
                by_var[k].push(t);
            }
        }
    }
    let mut value: f64 = terms.iter().sum();
    let mut best = (value.abs(), 0u64);
    let mut gray = 0u64;
    for i in 1..(1u64 << n) {
        let k = i.trailing_zeros() as usize;
        gray ^= 1 << k;
        for &t in &by_var[k] {
            value -= 2.0 * terms[t];
            terms[t] = -terms[t];
        }
        let v = value.abs();
        if v > best.0 || (v == best.0 && gray < best.1) {
            best = (v, gray);
        }
    }
    // recompute at the winner to shed accumulated rounding
    let x: Vec<Complex64> = (0..n)
        .map(|k| Complex64::new(if best.1 >> k & 1 == 1 { -1.0 } else { 1.0 }, 0.0))
        .collect();
    let exact = eval_poly(p, &x).map(|v| v.norm()).unwrap_or(best.0);
    (exact, best.1)
}

fn random_start(n: usize, ball_p: f64, complex: bool, rng: &mut impl Rng) -> Vec<Complex64> {
    let kind = if complex {
        GeneratorKind::GaussianComplex
    } else {
        GeneratorKind::GaussianReal
    };
    let z: Vec<Complex64> = if ball_p.is_infinite() {
        (0..n)
            .map(|_| {
                let r = rng.random::<f64>();
                kind.sample(rng).unscale(kind.sample(rng).norm().max(1e-300)) * r
            })
            .collect()
    } else {
        (0..n).map(|_| kind.sample(rng)).collect()
    };
    let norm = lp(&z, ball_p);
    if norm == 0.0 {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        if n > 0 {
            e[0] = Complex64::new(1.0, 0.0);
        }
        return e;
    }
    z.into_iter().map(|v| v / norm).collect()
}

/// Projected linearization ascent: step towards the `ℓ_p`-ball point that
/// maximizes the linearization of `|P|`, with backtracking on the step.
pub(crate) fn ascend(p: &SparsePoly, ball_p: f64, mut z: Vec<Complex64>, opts: &SearchOptions) -> (f64, Vec<Complex64>) {
    let (mut val, mut grad) = p.eval_with_gradient(&z);
    let mut value = val.norm();
    for _ in 0..opts.max_iter {
        let dir: Vec<Complex64> = grad.iter().map(|g| val.conj() * g).collect();
        if dir.iter().all(|d| d.norm() == 0.0) {
            break;
        }
        let y = dual_maximizer(&dir, ball_p);
        let mut eta = 1.0;
        let mut accepted = None;
        for _ in 0..12 {
            let cand: Vec<Complex64> = z.iter().zip(&y).map(|(a, b)| a * (1.0 - eta) + b * eta).collect();
            let (cv, cg) = p.eval_with_gradient(&cand);
            if cv.norm() > value {
                accepted = Some((cand, cv, cg));
                break;
            }
            eta *= 0.5;
        }
        let Some((cand, cv, cg)) = accepted else { break };
        let gain = cv.norm() - value;
        z = cand;
        val = cv;
        grad = cg;
        value = val.norm();
        if gain <= opts.tol * value {
            break;
        }
    }
    (value, z)
}

fn multistart(p: &SparsePoly, ball_p: f64, opts: &SearchOptions) -> SupEstimate {
    let complex = !p.is_real();
    let n = p.n();
    let starts = opts.starts.max(1);
    let (lower, _, witness) = (0..starts)
        .into_par_iter()
        .map(|s| {
            let mut rng = stream_rng(opts.seed, s as u64);
            let z0 = random_start(n, ball_p, complex, &mut rng);
            let (v, z) = ascend(p, ball_p, z0, opts);
            (v, s, z)
        })
        .reduce(
            || (f64::NEG_INFINITY, usize::MAX, Vec::new()),
            |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a },
        );
    SupEstimate::lower_only(lower, SupMethod::MultistartSearch, witness)
}
