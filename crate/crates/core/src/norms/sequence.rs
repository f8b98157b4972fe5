use num_complex::Complex64;

use crate::error::{invalid, Result};

/// Moduli `|x_k|` sorted in nonincreasing order.
pub fn decreasing_rearrangement(x: &[Complex64]) -> Vec<f64> {
    let mut out: Vec<f64> = x.iter().map(|z| z.norm()).collect();
    out.sort_unstable_by(|a, b| b.total_cmp(a));
    out
}

pub fn sup_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `ℓ_p` norm for `p ∈ [1, ∞]`, computed with max-scaling against overflow.
pub fn lp_norm(x: &[Complex64], p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return invalid(format!("lp_norm: p must be >= 1, got {p}"));
    }
    let m = sup_norm(x);
    if p.is_infinite() || m == 0.0 {
        return Ok(m);
    }
    if p == 2.0 {
        return Ok(m * x.iter().map(|z| (z.norm() / m).powi(2)).sum::<f64>().sqrt());
    }
    let s: f64 = x.iter().map(|z| (z.norm() / m).powf(p)).sum();
    Ok(m * s.powf(1.0 / p))
}

/// Weak-`ℓ_q` quasi-norm `sup_n n^{1/q} x*_n`.
pub fn weak_norm(x: &[Complex64], q: f64) -> Result<f64> {
    if !(q > 1.0) {
        return invalid(format!("weak_norm: q must be > 1, got {q}"));
    }
    let inv_q = 1.0 / q;
    Ok(decreasing_rearrangement(x)
        .iter()
        .enumerate()
        .map(|(i, v)| ((i + 1) as f64).powf(inv_q) * v)
        .fold(0.0, f64::max))
}

/// Nonincreasing positive weights `w₁ ≥ w₂ ≥ … > 0` of a Marcinkiewicz space.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence(Vec<f64>);

impl WeightSequence {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if w.is_empty() {
            return invalid("weight sequence must be nonempty");
        }
        if w.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
            return invalid("weights must be positive and finite");
        }
        // small slack for weights produced by differencing a concave ψ
        if w.windows(2).any(|p| p[1] > p[0] * (1.0 + 1e-12)) {
            return invalid("weights must be nonincreasing");
        }
        Ok(WeightSequence(w))
    }

    /// Weights `w_n = ψ(n) − ψ(n−1)` with `ψ(0) = 0`.
    pub fn from_psi(psi: impl Fn(f64) -> f64, len: usize) -> Result<Self> {
        let w = (1..=len)
            .map(|n| psi(n as f64) - psi((n - 1) as f64))
            .collect();
        Self::new(w)
    }

    /// Weights for `ψ(n) = n^{1−1/q}`, i.e. the weak-`ℓ_q` case.
    pub fn power(q: f64, len: usize) -> Result<Self> {
        if !(q > 1.0) {
            return invalid(format!("power weight needs q > 1, got {q}"));
        }
        let e = 1.0 - 1.0 / q;
        Self::from_psi(|n| n.powf(e), len)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `sup_n (x*₁+⋯+x*_n)/(w₁+⋯+w_n)` over `n ≤ len(w)`.
pub fn marcinkiewicz_norm(x: &[Complex64], w: &WeightSequence) -> Result<f64> {
    if x.len() > w.len() {
        return invalid(format!(
            "marcinkiewicz_norm: sequence length {} exceeds weight length {}",
            x.len(),
            w.len()
        ));
    }
    let xs = decreasing_rearrangement(x);
    let mut num = 0.0;
    let mut den = 0.0;
    let mut best: f64 = 0.0;
    for (n, wn) in w.as_slice().iter().enumerate() {
        num += xs.get(n).copied().unwrap_or(0.0);
        den += wn;
        best = best.max(num / den);
    }
    Ok(best)
}

/// The `S_{r'}` selector: `ℓ₂` for `r = 2`, otherwise the Marcinkiewicz norm
/// with `ψ(n) = n^{1−1/r'}` where `r' = r/(r−1)`.
pub fn s_norm(x: &[Complex64], r: f64) -> Result<f64> {
    if !(r >= 2.0) {
        return invalid(format!("s_norm: r must be >= 2, got {r}"));
    }
    if r == 2.0 {
        return lp_norm(x, 2.0);
    }
    if x.is_empty() {
        return Ok(0.0);
    }
    let r_conj = if r.is_infinite() { 1.0 } else { r / (r - 1.0) };
    let e = 1.0 - 1.0 / r_conj;
    let w = WeightSequence::from_psi(|n| n.powf(e), x.len())?;
    marcinkiewicz_norm(x, &w)
}

/// `h_N = Σ_{j≤N} 1/j`.
pub fn harmonic_number(n: u64) -> Result<f64> {
    if n == 0 {
        return invalid("harmonic_number: N must be at least 1");
    }
    // smallest terms first
    Ok((1..=n).rev().map(|j| 1.0 / j as f64).sum())
}

/// `(Σ_{j≤N} |ξ_j|^{h_N} / j)^{1/h_N}` with `N = len(ξ)`.
///
/// The measure `μ_N({j}) = 1/j` has total mass `h_N`; it is not normalised.
pub fn l_hn_norm(xi: &[Complex64]) -> Result<f64> {
    if xi.is_empty() {
        return invalid("l_hn_norm: input must be nonempty");
    }
    let h = harmonic_number(xi.len() as u64)?;
    let m = sup_norm(xi);
    if m == 0.0 {
        return Ok(0.0);
    }
    let s: f64 = xi
        .iter()
        .enumerate()
        .rev()
        .map(|(j, z)| (z.norm() / m).powf(h) / (j + 1) as f64)
        .sum();
    Ok(m * s.powf(1.0 / h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::to_complex;

    fn c(v: &[f64]) -> Vec<Complex64> {
        to_complex(v)
    }

    #[test]
    fn rearrangement_examples() {
        assert_eq!(decreasing_rearrangement(&c(&[3.0, 1.0, 2.0])), vec![3.0, 2.0, 1.0]);
        let x = vec![Complex64::new(0.0, 1.0), Complex64::new(-2.0, 0.0)];
        assert_eq!(decreasing_rearrangement(&x), vec![2.0, 1.0]);
        assert_eq!(decreasing_rearrangement(&c(&[0.0; 3])), vec![0.0; 3]);
    }

    #[test]
    fn weak_norm_examples() {
        assert_eq!(weak_norm(&c(&[1.0, 0.0, 0.0]), 2.0).unwrap(), 1.0);
        let x: Vec<f64> = (1..=100).map(|n| (n as f64).powf(-0.5)).collect();
        assert!((weak_norm(&c(&x), 2.0).unwrap() - 1.0).abs() < 1e-12);
        let v = weak_norm(&c(&[1.0, 1.0]), 4.0 / 3.0).unwrap();
        assert!((v - 2f64.powf(0.75)).abs() < 1e-12 && (v - 1.68179).abs() < 1e-5);
        assert!(weak_norm(&c(&[1.0]), 1.0).is_err());
    }

    #[test]
    fn marcinkiewicz_examples() {
        let w = WeightSequence::new(vec![1.0, 1.0]).unwrap();
        assert_eq!(marcinkiewicz_norm(&c(&[2.0, 1.0]), &w).unwrap(), 2.0);
        let w = WeightSequence::from_psi(f64::sqrt, 4).unwrap();
        assert!((marcinkiewicz_norm(&c(&[1.0]), &w).unwrap() - 1.0).abs() < 1e-15);
        let w = WeightSequence::new(vec![1.0; 3]).unwrap();
        assert_eq!(marcinkiewicz_norm(&c(&[1.0; 3]), &w).unwrap(), 1.0);
        assert!(WeightSequence::new(vec![]).is_err());
        assert!(WeightSequence::new(vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn s_norm_examples() {
        assert!((s_norm(&c(&[3.0, 4.0]), 2.0).unwrap() - 5.0).abs() < 1e-15);
        assert!((s_norm(&c(&[1.0, 0.0]), 4.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((s_norm(&c(&[1.0, 1.0]), 4.0).unwrap() - 2f64.powf(0.75)).abs() < 1e-12);
        assert!(s_norm(&c(&[1.0]), 1.5).is_err());
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic_number(1).unwrap(), 1.0);
        assert!((harmonic_number(4).unwrap() - 25.0 / 12.0).abs() < 1e-15);
        let h = harmonic_number(1_000_000).unwrap();
        let l = (1e6f64).ln();
        assert!(l < h && h <= 1.0 + l);
        assert!(harmonic_number(0).is_err());
    }

    #[test]
    fn l_hn_examples() {
        let z = Complex64::new(-0.3, 0.4);
        assert!((l_hn_norm(&[z]).unwrap() - 0.5).abs() < 1e-15);
        for n in [1usize, 2, 7, 100] {
            let h = harmonic_number(n as u64).unwrap();
            let v = l_hn_norm(&c(&vec![1.0; n])).unwrap();
            assert!((v - h.powf(1.0 / h)).abs() < 1e-12);
        }
        let v = l_hn_norm(&c(&[1.0, 1.0])).unwrap();
        assert!((v - 1.5f64.powf(2.0 / 3.0)).abs() < 1e-14 && (v - 1.31037).abs() < 1e-5);
        assert!(l_hn_norm(&[]).is_err());
    }
}
