//! Polynomials, multilinear forms and their sup norms.
//!
//! Sup norms are reported as a [`SupEstimate`]: a certified lower value
//! achieved at an explicit witness point, plus an upper bound whenever the
//! method can certify one (exact enumeration, spectral decomposition, or a
//! torus grid dense enough for the Bernstein factor-2 estimate).

mod ball;
mod bounds;
mod multilinear;
mod sparse;
mod torus;

pub use ball::{sup_ball, sup_ball_with};
pub use bounds::{ball_net_size, ksz_rhs_bound, r_of_p, HarrisConstants, RhsParams, RhsTheorem};
pub use multilinear::{eval_multilinear, spectral_norm_real, sup_multilinear, sup_multilinear_with, MultilinearForm};
pub use sparse::{eval_poly, Flavor, MultiIndex, SparsePoly};
pub(crate) use torus::circle_ascent;
pub use torus::{bernstein_points_per_axis, circle_sup, sample_torus, sup_torus, sup_torus_with, TorusOptions};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Default cap on point evaluations in one sup computation.
pub const DEFAULT_EVAL_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SupMethod {
    TorusGridBernstein,
    VertexExact,
    Spectral,
    MultistartSearch,
    KroneckerFlow,
}

/// Strategy selector for ball and multilinear sups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchStrategy {
    MultistartSearch,
    VertexExact,
    Spectral,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupEstimate {
    pub lower: f64,
    pub upper: Option<f64>,
    pub method: SupMethod,
    pub witness: Vec<Complex64>,
}

impl SupEstimate {
    pub(crate) fn exact(value: f64, method: SupMethod, witness: Vec<Complex64>) -> Self {
        SupEstimate {
            lower: value,
            upper: Some(value),
            method,
            witness,
        }
    }

    pub(crate) fn lower_only(value: f64, method: SupMethod, witness: Vec<Complex64>) -> Self {
        SupEstimate {
            lower: value,
            upper: None,
            method,
            witness,
        }
    }
}

/// Tuning for local searches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub starts: usize,
    pub seed: u64,
    pub max_iter: usize,
    /// Relative improvement below which an ascent stops.
    pub tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            starts: 64,
            seed: 0,
            max_iter: 200,
            tol: 1e-10,
        }
    }
}

/// Point `y` of the unit ball of `ℓ_p` maximizing `Re Σ a_k y_k`; the
/// maximum equals `‖a‖_{p'}`. Real inputs give real outputs.
pub(crate) fn dual_maximizer(a: &[Complex64], p: f64) -> Vec<Complex64> {
    let phase = |z: Complex64| {
        let r = z.norm();
        if r == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            z.conj() / r
        }
    };
    if p.is_infinite() {
        return a
            .iter()
            .map(|z| if z.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { phase(*z) })
            .collect();
    }
    if p == 1.0 {
        let mut out = vec![Complex64::new(0.0, 0.0); a.len()];
        let mut best = 0;
        for (k, z) in a.iter().enumerate() {
            if z.norm() > a[best].norm() {
                best = k;
            }
        }
        if !a.is_empty() {
            out[best] = if a[best].norm() == 0.0 { Complex64::new(1.0, 0.0) } else { phase(a[best]) };
        }
        return out;
    }
    let q = p / (p - 1.0);
    let m = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if m == 0.0 {
        let mut out = vec![Complex64::new(0.0, 0.0); a.len()];
        if let Some(first) = out.first_mut() {
            *first = Complex64::new(1.0, 0.0);
        }
        return out;
    }
    let weights: Vec<f64> = a.iter().map(|z| (z.norm() / m).powf(q - 1.0)).collect();
    let norm_p = weights.iter().map(|w| w.powf(p)).sum::<f64>().powf(1.0 / p);
    a.iter()
        .zip(&weights)
        .map(|(z, w)| phase(*z) * (w / norm_p))
        .collect()
}

/// `ℓ_p` norm of a complex vector, `p ∈ [1, ∞]`.
pub(crate) fn lp(a: &[Complex64], p: f64) -> f64 {
    crate::norms::lp_norm(a, p).unwrap_or(f64::NAN)
}
