//! Subgaussian random families and their elementary bounds.
//!
//! Four built-in families are provided, all with subgaussian constant 1:
//! real Rademacher signs, complex Steinhaus variables (uniform on the unit
//! circle), real standard Gaussians and complex Gaussians. The complex
//! Gaussian uses independent real and imaginary parts, each of variance 1/2,
//! so that `E|g|² = 1`.
//!
//! Randomness is keyed by a `(seed, stream)` pair through a ChaCha8 stream
//! cipher, so any trial of any experiment can be regenerated in isolation and
//! parallel runs do not depend on scheduling.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeneratorKind {
    RademacherReal,
    SteinhausComplex,
    GaussianReal,
    GaussianComplex,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 4] = [
        GeneratorKind::RademacherReal,
        GeneratorKind::SteinhausComplex,
        GeneratorKind::GaussianReal,
        GeneratorKind::GaussianComplex,
    ];

    pub fn is_complex(self) -> bool {
        matches!(
            self,
            GeneratorKind::SteinhausComplex | GeneratorKind::GaussianComplex
        )
    }

    /// Draws one value; real families have zero imaginary part.
    #[inline]
    pub fn sample<R: Rng + ?Sized>(self, rng: &mut R) -> Complex64 {
        match self {
            GeneratorKind::RademacherReal => {
                Complex64::new(if rng.random::<bool>() { 1.0 } else { -1.0 }, 0.0)
            }
            GeneratorKind::SteinhausComplex => {
                let theta = rng.random::<f64>() * std::f64::consts::TAU;
                Complex64::from_polar(1.0, theta)
            }
            GeneratorKind::GaussianReal => {
                Complex64::new(StandardNormal.sample(rng), 0.0)
            }
            GeneratorKind::GaussianComplex => {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
            }
        }
    }

    /// Real part of [`sample`](Self::sample), for real families in hot loops.
    #[inline]
    pub fn sample_real<R: Rng + ?Sized>(self, rng: &mut R) -> f64 {
        self.sample(rng).re
    }
}

/// A subgaussian family: its kind, subgaussian constant and almost-sure bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GeneratorSpecRepr")]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub sg: f64,
    pub bound: Option<f64>,
}

#[derive(Deserialize)]
struct GeneratorSpecRepr {
    kind: GeneratorKind,
    #[serde(default)]
    sg: Option<f64>,
    #[serde(default)]
    bound: Option<f64>,
}

impl TryFrom<GeneratorSpecRepr> for GeneratorSpec {
    type Error = Error;

    fn try_from(repr: GeneratorSpecRepr) -> Result<Self> {
        let spec = GeneratorSpec::new(repr.kind);
        if let Some(sg) = repr.sg {
            if sg != spec.sg {
                return invalid(format!("{:?} has sg = 1, got {sg}", repr.kind));
            }
        }
        if repr.bound.is_some() && repr.bound != spec.bound {
            return invalid(format!("{:?} has bound {:?}", repr.kind, spec.bound));
        }
        Ok(spec)
    }
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind) -> Self {
        let bound = match kind {
            GeneratorKind::RademacherReal | GeneratorKind::SteinhausComplex => Some(1.0),
            GeneratorKind::GaussianReal | GeneratorKind::GaussianComplex => None,
        };
        GeneratorSpec { kind, sg: 1.0, bound }
    }

    pub fn rademacher() -> Self {
        Self::new(GeneratorKind::RademacherReal)
    }

    pub fn steinhaus() -> Self {
        Self::new(GeneratorKind::SteinhausComplex)
    }

    pub fn is_complex(&self) -> bool {
        self.kind.is_complex()
    }
}

/// Deterministic generator for the `(seed, stream)` pair.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A batch of i.i.d. draws together with the key that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrawBatch {
    pub values: Vec<Complex64>,
    pub spec: GeneratorSpec,
    pub seed: u64,
    pub stream: u64,
}

pub fn draw_batch(spec: GeneratorSpec, count: usize, seed: u64, stream: u64) -> Result<DrawBatch> {
    if count == 0 {
        return invalid("draw_batch: count must be at least 1");
    }
    let mut rng = stream_rng(seed, stream);
    let values = (0..count).map(|_| spec.kind.sample(&mut rng)).collect();
    Ok(DrawBatch {
        values,
        spec,
        seed,
        stream,
    })
}

/// Subgaussian constant bound for a sum of independent subgaussians:
/// `√2 · (Σ sg_i²)^{1/2}`.
pub fn sg_sum_bound(sgs: &[f64]) -> Result<f64> {
    if let Some(bad) = sgs.iter().find(|s| !(**s >= 0.0)) {
        return invalid(format!("sg_sum_bound: negative or NaN constant {bad}"));
    }
    let ss: f64 = sgs.iter().map(|s| s * s).sum();
    Ok(std::f64::consts::SQRT_2 * ss.sqrt())
}

/// Upper bound on `P(|f| > t)` for a subgaussian `f` with constant `sg`.
///
/// Real families: `2 exp(-t²/(2 sg²))`; complex: `4 exp(-t²/(4 sg²))`.
/// Clamped to `[0, 1]`.
pub fn tail_bound(spec: &GeneratorSpec, sg: f64, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return invalid(format!("tail_bound: t must be nonnegative, got {t}"));
    }
    if !(sg >= 0.0) {
        return invalid(format!("tail_bound: sg must be nonnegative, got {sg}"));
    }
    if sg == 0.0 {
        // constant zero variable
        return Ok(if t > 0.0 { 0.0 } else { 1.0 });
    }
    let value = if spec.is_complex() {
        4.0 * (-t * t / (4.0 * sg * sg)).exp()
    } else {
        2.0 * (-t * t / (2.0 * sg * sg)).exp()
    };
    Ok(value.min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rademacher_support() {
        let b = draw_batch(GeneratorSpec::rademacher(), 8, 1, 0).unwrap();
        assert_eq!(b.values.len(), 8);
        for v in &b.values {
            assert!(v.im == 0.0 && (v.re == 1.0 || v.re == -1.0));
        }
    }

    #[test]
    fn steinhaus_unimodular() {
        let b = draw_batch(GeneratorSpec::steinhaus(), 5, 1, 0).unwrap();
        assert_eq!(b.values.len(), 5);
        for v in &b.values {
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn gaussian_real_variance() {
        let b = draw_batch(GeneratorSpec::new(GeneratorKind::GaussianReal), 1_000_000, 7, 0).unwrap();
        let n = b.values.len() as f64;
        let mean = b.values.iter().map(|v| v.re).sum::<f64>() / n;
        let var = b.values.iter().map(|v| (v.re - mean).powi(2)).sum::<f64>() / (n - 1.0);
        assert!((0.99..=1.01).contains(&var), "variance {var}");
    }

    #[test]
    fn zero_count_rejected() {
        assert!(matches!(
            draw_batch(GeneratorSpec::rademacher(), 0, 1, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn determinism_and_stream_separation() {
        for kind in GeneratorKind::ALL {
            let spec = GeneratorSpec::new(kind);
            let a = draw_batch(spec, 64, 99, 3).unwrap();
            let b = draw_batch(spec, 64, 99, 3).unwrap();
            let c = draw_batch(spec, 64, 99, 4).unwrap();
            assert_eq!(a.values, b.values);
            assert_ne!(a.values, c.values);
        }
    }

    #[test]
    fn spec_invariants() {
        for kind in GeneratorKind::ALL {
            let s = GeneratorSpec::new(kind);
            assert_eq!(s.sg, 1.0);
            let bounded = matches!(kind, GeneratorKind::RademacherReal | GeneratorKind::SteinhausComplex);
            assert_eq!(s.bound.is_some(), bounded);
        }
        let s: GeneratorSpec = serde_json::from_str(r#"{"kind":"GaussianComplex"}"#).unwrap();
        assert_eq!(s, GeneratorSpec::new(GeneratorKind::GaussianComplex));
        assert!(serde_json::from_str::<GeneratorSpec>(r#"{"kind":"GaussianReal","sg":2}"#).is_err());
    }

    #[test]
    fn complex_gaussian_unit_total_variance() {
        let b = draw_batch(GeneratorSpec::new(GeneratorKind::GaussianComplex), 200_000, 5, 0).unwrap();
        let m2 = b.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / b.values.len() as f64;
        assert!((m2 - 1.0).abs() < 0.02, "E|g|^2 = {m2}");
    }

    #[test]
    fn mean_zero_all_kinds() {
        for kind in GeneratorKind::ALL {
            let b = draw_batch(GeneratorSpec::new(kind), 1_000_000, 11, 1).unwrap();
            let mean = b.values.iter().sum::<Complex64>() / b.values.len() as f64;
            assert!(mean.norm() <= 0.01, "{kind:?} mean {mean}");
        }
    }

    #[test]
    fn sum_bound_examples() {
        assert!((sg_sum_bound(&[1.0]).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(sg_sum_bound(&[]).unwrap(), 0.0);
        assert!((sg_sum_bound(&[1.0; 4]).unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        assert!(sg_sum_bound(&[1.0, -0.5]).is_err());
    }

    #[test]
    fn tail_bound_examples() {
        let real = GeneratorSpec::rademacher();
        let cplx = GeneratorSpec::steinhaus();
        assert_eq!(tail_bound(&real, 1.0, 0.0).unwrap(), 1.0);
        assert!((tail_bound(&real, 1.0, 2.0).unwrap() - 2.0 * (-2f64).exp()).abs() < 1e-15);
        assert!((tail_bound(&real, 1.0, 2.0).unwrap() - 0.27067).abs() < 1e-5);
        assert!((tail_bound(&cplx, 1.0, 4.0).unwrap() - 0.07326).abs() < 1e-5);
        assert_eq!(tail_bound(&real, 0.0, 1.0).unwrap(), 0.0);
        assert!(tail_bound(&real, 1.0, -1.0).is_err());
    }

    #[test]
    fn tail_bound_monotone() {
        for spec in [GeneratorSpec::rademacher(), GeneratorSpec::steinhaus()] {
            let mut prev = f64::INFINITY;
            for k in 0..200 {
                let v = tail_bound(&spec, 1.3, k as f64 * 0.05).unwrap();
                assert!(v <= prev && (0.0..=1.0).contains(&v));
                prev = v;
            }
        }
    }

    #[test]
    fn empirical_tails_below_bound() {
        let trials = 100_000usize;
        for (ki, kind) in GeneratorKind::ALL.into_iter().enumerate() {
            let spec = GeneratorSpec::new(kind);
            let mut rng = stream_rng(2024, ki as u64);
            let n = 1 + (ki * 7) % 32;
            let mut alpha: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
            let norm = alpha.iter().map(|a| a * a).sum::<f64>().sqrt();
            alpha.iter_mut().for_each(|a| *a /= norm);
            for t in [1.0, 2.0, 3.0] {
                let thresh = t * std::f64::consts::SQRT_2;
                let mut hits = 0usize;
                for _ in 0..trials {
                    let s: Complex64 = alpha.iter().map(|a| kind.sample(&mut rng) * *a).sum();
                    if s.norm() > thresh {
                        hits += 1;
                    }
                }
                let freq = hits as f64 / trials as f64;
                let bound = tail_bound(&spec, std::f64::consts::SQRT_2, t).unwrap();
                let se = (bound * (1.0 - bound) / trials as f64).sqrt();
                assert!(freq <= bound + 3.0 * se, "{kind:?} t={t}: {freq} > {bound}");
            }
        }
    }
}
