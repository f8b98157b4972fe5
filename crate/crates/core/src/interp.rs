//! K-functionals and interpolation norms on sequence spaces.
//!
//! The couple `(ℓ₁, ℓ₂)` admits an exact K-functional through the
//! soft-threshold fixed point, and the weighted couple `(ℓ∞, ℓ∞(2^{-k}))`
//! reduces to a one-dimensional piecewise-linear minimization. On top of these
//! sit the K-method `(ψ, ∞)` norm and the Calderón–Lozanovskii norm
//! `φ(ℓ₁, ℓ₂) = ℓ_φ` with `φ^{-1}(u) = φ(u, √u)`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::norms::{orlicz_seq_norm, sup_norm};

const HOMOGENEITY_TOL: f64 = 1e-9;
const THETA_TOL: f64 = 1e-12;
const K_WINDOW_START: u32 = 8;
const K_WINDOW_CAP: u32 = 64;
const WINDOW_STABLE: f64 = 0.01;

/// A function `ψ(s, t)` on `(0, ∞)²` that is positively homogeneous of
/// degree one and nondecreasing in each variable.
///
/// Both properties are checked on a sampled grid when the handle is built.
/// A function that passes the sampled checks but fails them elsewhere is
/// accepted, and results computed from it are meaningless.
#[derive(Clone)]
pub struct QFunction {
    eval: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for QFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QFunction").finish_non_exhaustive()
    }
}

impl QFunction {
    pub fn new(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        let q = QFunction { eval: Arc::new(f) };
        q.check()?;
        Ok(q)
    }

    /// `ψ(s, t) = s^{1-θ} t^θ`.
    pub fn power(theta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&theta) {
            return invalid(format!("power QFunction needs theta in [0, 1], got {theta}"));
        }
        Self::new(move |s, t| s.powf(1.0 - theta) * t.powf(theta))
    }

    pub fn eval(&self, s: f64, t: f64) -> f64 {
        (self.eval)(s, t)
    }

    fn check(&self) -> Result<()> {
        let grid: Vec<f64> = (0..10).map(|i| 2f64.powf(i as f64 - 4.5)).collect();
        let lambdas = [0.01, 0.5, 3.0, 17.0, 1e3];
        for &s in &grid {
            for &t in &grid {
                let base = self.eval(s, t);
                if !base.is_finite() || base < 0.0 {
                    return invalid(format!("psi({s}, {t}) = {base} is not a finite nonnegative value"));
                }
                for &l in &lambdas {
                    let scaled = self.eval(l * s, l * t);
                    if (scaled - l * base).abs() > HOMOGENEITY_TOL * l * base.max(f64::MIN_POSITIVE) {
                        return invalid(format!("psi is not homogeneous of degree 1 at ({s}, {t}), lambda = {l}"));
                    }
                }
            }
        }
        for w in grid.windows(2) {
            for &other in &grid {
                let slack = 1e-12;
                if self.eval(w[1], other) < self.eval(w[0], other) * (1.0 - slack)
                    || self.eval(other, w[1]) < self.eval(other, w[0]) * (1.0 - slack)
                {
                    return invalid(format!("psi is decreasing near ({}, {other})", w[0]));
                }
            }
        }
        Ok(())
    }
}

/// `K(1, t, x; ℓ₁, ℓ₂) = inf { ‖x₀‖₁ + t‖x₁‖₂ : x = x₀ + x₁ }`.
///
/// The optimal `x₁` is `clip(x, θ)` where `‖clip(x, θ)‖₂ = tθ`; the root is
/// found by bisection and compared against both trivial splittings.
pub fn k_functional_l1_l2(t: f64, x: &[Complex64]) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return invalid(format!("k_functional_l1_l2 needs t > 0, got {t}"));
    }
    let moduli: Vec<f64> = x.iter().map(|z| z.norm()).filter(|v| *v > 0.0).collect();
    if moduli.is_empty() {
        return Ok(0.0);
    }
    let n1: f64 = moduli.iter().sum();
    let n2 = moduli.iter().map(|v| v * v).sum::<f64>().sqrt();
    let max = moduli.iter().fold(0.0f64, |a, v| a.max(*v));
    let mut best = n1.min(t * n2);

    // g(θ) = ‖clip(x, θ)‖₂ / θ decreases from √k to ‖x‖₂/‖x‖∞ on (0, ‖x‖∞]
    let clip_norm = |theta: f64| moduli.iter().map(|v| v.min(theta).powi(2)).sum::<f64>().sqrt();
    let k = moduli.len() as f64;
    if t < k.sqrt() && t * max > n2 {
        let (mut lo, mut hi) = (0.0, max);
        while hi - lo > THETA_TOL * max {
            let mid = 0.5 * (lo + hi);
            if clip_norm(mid) > t * mid {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let theta = 0.5 * (lo + hi);
        let excess: f64 = moduli.iter().map(|v| (v - theta).max(0.0)).sum();
        best = best.min(excess + t * clip_norm(theta));
    }
    Ok(best)
}

/// Exact `K(s, t, ξ; ℓ∞, ℓ∞(2^{-k}))` for `ξ` indexed by `k_lo, k_lo + 1, …`.
///
/// Minimizes the convex piecewise-linear function
/// `u ↦ s·u + t·max_k 2^{-k}(|ξ_k| − u)₊` over all of its kinks: the values
/// `|ξ_k|`, zero, and the crossings of pairs of active lines.
pub fn k_functional_weighted_linf(s: f64, t: f64, xi: &[Complex64], k_lo: i32) -> Result<f64> {
    if !(s > 0.0) || !(t > 0.0) || !s.is_finite() || !t.is_finite() {
        return invalid(format!("k_functional_weighted_linf needs s, t > 0, got s = {s}, t = {t}"));
    }
    let lines: Vec<(f64, f64)> = xi
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm() > 0.0)
        .map(|(i, z)| (2f64.powi(-(k_lo + i as i32)), z.norm()))
        .collect();
    if lines.is_empty() {
        return Ok(0.0);
    }
    let objective = |u: f64| {
        let tail = lines.iter().map(|(w, a)| w * (a - u).max(0.0)).fold(0.0, f64::max);
        s * u + t * tail
    };
    let mut candidates: Vec<f64> = vec![0.0];
    candidates.extend(lines.iter().map(|(_, a)| *a));
    for (i, (wi, ai)) in lines.iter().enumerate() {
        for (wj, aj) in &lines[i + 1..] {
            if wi != wj {
                let u = (wi * ai - wj * aj) / (wi - wj);
                if u > 0.0 && u < ai.max(*aj) {
                    candidates.push(u);
                }
            }
        }
    }
    Ok(candidates.into_iter().map(objective).fold(f64::INFINITY, f64::min))
}

/// `L = sup_k min{s, 2^{-k} t} |ξ_k|`; the exact K lies in `[L, 2L]`.
pub fn weighted_linf_envelope(s: f64, t: f64, xi: &[Complex64], k_lo: i32) -> f64 {
    xi.iter()
        .enumerate()
        .map(|(i, z)| s.min(2f64.powi(-(k_lo + i as i32)) * t) * z.norm())
        .fold(0.0, f64::max)
}

/// `K(1, 2^k, x; ℓ₁, ℓ₂)` for `k ∈ [k_lo, k_hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct KProfile {
    pub k_lo: i32,
    pub k_hi: i32,
    pub values: Vec<f64>,
}

impl KProfile {
    pub fn new(x: &[Complex64], k_lo: i32, k_hi: i32) -> Result<Self> {
        if k_hi < k_lo {
            return invalid(format!("KProfile needs k_lo <= k_hi, got [{k_lo}, {k_hi}]"));
        }
        let values = (k_lo..=k_hi)
            .into_par_iter()
            .map(|k| k_functional_l1_l2(2f64.powi(k), x))
            .collect::<Result<Vec<_>>>()?;
        Ok(KProfile { k_lo, k_hi, values })
    }

    pub fn is_nondecreasing(&self, rel_tol: f64) -> bool {
        self.values.windows(2).all(|w| w[1] >= w[0] * (1.0 - rel_tol))
    }

    /// Midpoint concavity in `t = 2^k`: for `t, 2t, 4t`,
    /// `K(2t) ≥ K(t) + (K(4t) − K(t))/3`.
    pub fn is_concave(&self, rel_tol: f64) -> bool {
        self.values
            .windows(3)
            .all(|w| w[1] >= (w[0] + (w[2] - w[0]) / 3.0) * (1.0 - rel_tol))
    }
}

/// `(ψ, ∞)` norm of `x` in the couple `(ℓ₁, ℓ₂)`:
/// `sup_k K(1, 2^k, x) / ψ(1, 2^k)` over `|k| ≤ window`.
///
/// The window starts at `max(k_window, 8)` and doubles until the sup moves by
/// less than 1%, up to 64.
pub fn k_method_norm(x: &[Complex64], psi: &QFunction, k_window: u32) -> Result<f64> {
    if k_window == 0 {
        return invalid("k_method_norm needs k_window >= 1");
    }
    if sup_norm(x) == 0.0 {
        return Ok(0.0);
    }
    let sup_over = |lo: i32, hi: i32| -> Result<f64> {
        (lo..=hi)
            .into_par_iter()
            .map(|k| Ok(k_functional_l1_l2(2f64.powi(k), x)? / psi.eval(1.0, 2f64.powi(k))))
            .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
    };
    let mut w = k_window.clamp(K_WINDOW_START, K_WINDOW_CAP) as i32;
    let mut current = sup_over(-w, w)?;
    while (w as u32) < K_WINDOW_CAP {
        let next_w = (2 * w).min(K_WINDOW_CAP as i32);
        let wider = current
            .max(sup_over(-next_w, -w - 1)?)
            .max(sup_over(w + 1, next_w)?);
        let stable = wider - current <= WINDOW_STABLE * current;
        current = wider;
        w = next_w;
        if stable {
            break;
        }
    }
    Ok(current)
}

/// Calderón–Lozanovskii norm `‖x‖_{φ(ℓ₁, ℓ₂)}`, computed as the Orlicz
/// sequence norm with `φ^{-1}(u) = φ(u, √u)`.
pub fn cl_orlicz_norm(x: &[Complex64], phi: &QFunction) -> Result<f64> {
    let phi_inverse = |u: f64| if u <= 0.0 { 0.0 } else { phi.eval(u, u.sqrt()) };
    orlicz_seq_norm(x, &phi_inverse)
}
