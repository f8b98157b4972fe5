use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::sequence::sup_norm;
use crate::error::{invalid, Result};

/// Exponent `r ≥ 1` of the exponential Orlicz function `φ_r(t) = e^{t^r} − 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct OrliczExponent(f64);

impl OrliczExponent {
    pub fn new(r: f64) -> Result<Self> {
        if !(r >= 1.0) || !r.is_finite() {
            return invalid(format!("Orlicz exponent must lie in [1, inf), got {r}"));
        }
        Ok(OrliczExponent(r))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for OrliczExponent {
    type Error = crate::Error;

    fn try_from(r: f64) -> Result<Self> {
        Self::new(r)
    }
}

impl From<OrliczExponent> for f64 {
    fn from(r: OrliczExponent) -> f64 {
        r.0
    }
}

/// Realizations of a nonnegative statistic, each carrying equal mass.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalSample(Vec<f64>);

impl EmpiricalSample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return invalid("empirical sample must be nonempty");
        }
        if values.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return invalid("empirical sample values must be finite and nonnegative");
        }
        Ok(EmpiricalSample(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }

    pub fn mean(&self) -> f64 {
        self.0.iter().sum::<f64>() / self.0.len() as f64
    }
}

const REL_TOL: f64 = 1e-12;
const EXP_CLAMP: f64 = 700.0;

/// Smallest `ε` in `[lo, hi]` with `modular(ε) ≤ 1`, where `modular` is
/// nonincreasing in `ε`. The bracket is widened geometrically if it does not
/// straddle the level set.
pub fn luxemburg_bisect(modular: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    debug_assert!(lo > 0.0 && hi > lo);
    let mut guard = 0;
    while modular(hi) > 1.0 && guard < 200 {
        lo = hi;
        hi *= 2.0;
        guard += 1;
    }
    guard = 0;
    while modular(lo) <= 1.0 && guard < 200 {
        hi = lo;
        lo *= 0.5;
        guard += 1;
    }
    for _ in 0..200 {
        if hi - lo <= REL_TOL * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if modular(mid) <= 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Luxemburg norm of the empirical measure in `L_{φ_r}`:
/// the smallest `ε` with `mean(exp((v/ε)^r) − 1) ≤ 1`.
pub fn orlicz_empirical_norm(sample: &EmpiricalSample, r: OrliczExponent) -> f64 {
    let max = sample.max();
    if max == 0.0 {
        return 0.0;
    }
    let r = r.value();
    let n = sample.values().len() as f64;
    let modular = |eps: f64| {
        let mut acc = 0.0;
        for &v in sample.values() {
            if v == 0.0 {
                continue;
            }
            let e = (v / eps).powf(r);
            if e > EXP_CLAMP {
                return f64::INFINITY;
            }
            acc += e.exp_m1();
        }
        acc / n
    };
    luxemburg_bisect(modular, max / 50.0, max * 50.0)
}

/// `sup_{p = 1..⌊p_max⌋} p^{−1/r} (mean v^p)^{1/p}`: the moment route to the
/// `L_{φ_r}` norm, equivalent to it up to constants depending only on `r`.
pub fn pmoment_orlicz_estimate(sample: &EmpiricalSample, r: OrliczExponent, p_max: f64) -> Result<f64> {
    if !(p_max >= 1.0) {
        return invalid(format!("p_max must be >= 1, got {p_max}"));
    }
    let max = sample.max();
    if max == 0.0 {
        return Ok(0.0);
    }
    let n = sample.values().len() as f64;
    let scaled: Vec<f64> = sample.values().iter().map(|v| v / max).collect();
    let mut pow = vec![1.0; scaled.len()];
    let mut best: f64 = 0.0;
    let top = p_max.floor() as u32;
    for p in 1..=top {
        let mut m = 0.0;
        for (acc, s) in pow.iter_mut().zip(&scaled) {
            *acc *= s;
            m += *acc;
        }
        let pf = p as f64;
        let moment = (m / n).powf(1.0 / pf);
        best = best.max(pf.powf(-1.0 / r.value()) * moment);
    }
    Ok(best * max)
}

/// Luxemburg norm of `x` in the Orlicz sequence space with Young function
/// `φ`, where `φ` is given through its inverse `φ^{-1}`.
///
/// `φ` is recovered pointwise by bisection on the supplied handle, which
/// must be continuous, strictly increasing and vanish at 0. Monotonicity is
/// checked on a sampled grid.
pub fn orlicz_seq_norm(x: &[Complex64], phi_inverse: &dyn Fn(f64) -> f64) -> Result<f64> {
    check_phi_inverse(phi_inverse)?;
    let max = sup_norm(x);
    if max == 0.0 {
        return Ok(0.0);
    }
    let moduli: Vec<f64> = x.iter().map(|z| z.norm()).filter(|v| *v > 0.0).collect();
    let phi = |u: f64| invert_increasing(phi_inverse, u);
    let modular = |lambda: f64| moduli.iter().map(|v| phi(v / lambda)).sum::<f64>();
    let lo = max / phi_inverse(1.0);
    let hi = max / phi_inverse(1.0 / moduli.len() as f64);
    let lo = lo * (1.0 - 1e-9);
    let hi = if hi > lo { hi * (1.0 + 1e-9) } else { lo * 2.0 };
    Ok(luxemburg_bisect(modular, lo, hi))
}

fn check_phi_inverse(f: &dyn Fn(f64) -> f64) -> Result<()> {
    let at_zero = f(0.0);
    if !(at_zero.abs() <= 1e-12) {
        return invalid(format!("phi_inverse(0) must be 0, got {at_zero}"));
    }
    let mut prev = at_zero;
    for k in -40..=40 {
        let t = 2f64.powf(k as f64 * 0.5);
        let v = f(t);
        if !v.is_finite() || !(v > prev) {
            return invalid(format!("phi_inverse is not strictly increasing near t = {t}"));
        }
        prev = v;
    }
    Ok(())
}

/// Solves `f(t) = u` for `t ≥ 0`, `f` strictly increasing with `f(0) = 0`.
fn invert_increasing(f: &dyn Fn(f64) -> f64, u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    let mut lo = 1.0;
    let mut hi = 1.0;
    let mut guard = 0;
    while f(hi) < u && guard < 2000 {
        lo = hi;
        hi *= 2.0;
        guard += 1;
    }
    if lo == hi {
        while f(lo) > u && guard < 4000 {
            hi = lo;
            lo *= 0.5;
            guard += 1;
        }
    }
    for _ in 0..200 {
        if hi - lo <= 1e-15 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) < u {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
