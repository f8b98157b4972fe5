//! Constant-free right-hand-side growth factors of the KSZ-type inequalities.
//!
//! The universal constants `C_r` are not explicit, so the harness only ever
//! compares ratios against these factors.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RhsTheorem {
    /// `e² √r (1 + log N)^{1/2}` for Rademacher averages in `ℓ_∞^N`.
    Gateway,
    /// `(1 + log N)^{1/r}`.
    Matrix,
    /// `(n(1 + log m))^{1/r}` for degree-`m` polynomials in `n` variables.
    KszOne,
    /// `(n(1 + log(8m²/w)))^{1/r}` for a convex body of width `w`.
    KszOneWidth,
    /// `(Σ_j n_j (1 + log m))^{1/r}` for `m`-linear forms.
    KszMulti,
    /// `n^{1/r(𝔭) + Σ_j max{1/2 − 1/p_j, 0}}`.
    Gurgel,
    /// `(1 + Π(1 + 20 log Ω))^{1/r}` for Dirichlet polynomials.
    DirichletMain,
    /// `sup_α (α^α / |α|^{|α|})^{1/p}` over the supplied multi-indices.
    HolderMonomial,
    /// `(n(1 + log m))^{1/r(p)} n^{m max{1/2 − 1/p, 0}}` for `m`-homogeneous
    /// polynomials on `ℓ_p^n`, with `r(p) = max{p', 2}`.
    Analog,
}

/// Symbols consumed by [`ksz_rhs_bound`]; each theorem reads only the ones
/// it needs.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RhsParams {
    #[serde(rename = "N")]
    pub big_n: Option<f64>,
    pub n: Option<f64>,
    pub m: Option<f64>,
    pub r: Option<f64>,
    pub p: Option<Vec<f64>>,
    pub n_list: Option<Vec<f64>>,
    pub width: Option<f64>,
    pub pi: Option<u64>,
    pub omega: Option<u64>,
    pub alphas: Option<Vec<Vec<u32>>>,
}

fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| crate::Error::InvalidArgument(format!("missing parameter {name}")))
}

fn positive(v: Option<f64>, name: &str) -> Result<f64> {
    let x = need(v, name)?;
    if !(x > 0.0) || !x.is_finite() {
        return invalid(format!("parameter {name} must be positive and finite, got {x}"));
    }
    Ok(x)
}

fn exponent_r(v: Option<f64>) -> Result<f64> {
    let r = need(v, "r")?;
    if !(r >= 2.0) {
        return invalid(format!("parameter r must be >= 2, got {r}"));
    }
    Ok(r)
}

fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// `r(𝔭) = min_k max{2, p_k'}`.
pub fn r_of_p(ps: &[f64]) -> Result<f64> {
    if ps.is_empty() {
        return invalid("parameter p must be nonempty");
    }
    if let Some(bad) = ps.iter().find(|p| !(**p >= 1.0)) {
        return invalid(format!("parameter p entries must be >= 1, got {bad}"));
    }
    Ok(ps.iter().map(|p| conjugate(*p).max(2.0)).fold(f64::INFINITY, f64::min))
}

fn excess(p: f64) -> f64 {
    (0.5 - 1.0 / p).max(0.0)
}

pub fn ksz_rhs_bound(theorem: RhsTheorem, params: &RhsParams) -> Result<f64> {
    use RhsTheorem::*;
    let value = match theorem {
        Gateway => {
            let big_n = positive(params.big_n, "N")?;
            let r = exponent_r(params.r)?;
            std::f64::consts::E.powi(2) * r.sqrt() * (1.0 + big_n.ln()).sqrt()
        }
        Matrix => {
            let big_n = positive(params.big_n, "N")?;
            let r = exponent_r(params.r)?;
            (1.0 + big_n.ln()).powf(1.0 / r)
        }
        KszOne => {
            let n = positive(params.n, "n")?;
            let m = positive(params.m, "m")?;
            let r = exponent_r(params.r)?;
            (n * (1.0 + m.ln())).powf(1.0 / r)
        }
        KszOneWidth => {
            let n = positive(params.n, "n")?;
            let m = positive(params.m, "m")?;
            let w = positive(params.width, "w(C)")?;
            let r = exponent_r(params.r)?;
            (n * (1.0 + (8.0 * m * m / w).ln())).powf(1.0 / r)
        }
        KszMulti => {
            let ns = params
                .n_list
                .as_ref()
                .ok_or_else(|| crate::Error::InvalidArgument("missing parameter n_list".into()))?;
            if ns.is_empty() || ns.iter().any(|v| !(*v > 0.0)) {
                return invalid("parameter n_list must hold positive dimensions");
            }
            let m = positive(params.m, "m")?;
            let r = exponent_r(params.r)?;
            (ns.iter().sum::<f64>() * (1.0 + m.ln())).powf(1.0 / r)
        }
        Gurgel => {
            let n = positive(params.n, "n")?;
            let ps = params
                .p
                .as_ref()
                .ok_or_else(|| crate::Error::InvalidArgument("missing parameter p".into()))?;
            if let Some(m) = params.m {
                if m as usize != ps.len() {
                    return invalid(format!("parameter m = {m} disagrees with {} entries of p", ps.len()));
                }
            }
            if ps.iter().all(|p| *p == 1.0) {
                return invalid("parameter p: not all p_j may equal 1");
            }
            let rp = r_of_p(ps)?;
            let e = 1.0 / rp + ps.iter().map(|p| excess(*p)).sum::<f64>();
            n.powf(e)
        }
        DirichletMain => {
            let r = exponent_r(params.r)?;
            let pi = need(params.pi, "Pi")?;
            if pi == 0 {
                1.0
            } else {
                let omega = need(params.omega, "Omega")?;
                if omega == 0 {
                    return invalid("parameter Omega must be >= 1 when Pi > 0");
                }
                (1.0 + pi as f64 * (1.0 + 20.0 * (omega as f64).ln())).powf(1.0 / r)
            }
        }
        HolderMonomial => {
            let bp = need(params.p.as_ref().and_then(|v| v.first().copied()), "p")?;
            if !(bp >= 1.0) {
                return invalid(format!("parameter p must be >= 1, got {bp}"));
            }
            let alphas = params
                .alphas
                .as_ref()
                .ok_or_else(|| crate::Error::InvalidArgument("missing parameter alphas".into()))?;
            if alphas.is_empty() {
                return invalid("parameter alphas must be nonempty");
            }
            alphas
                .iter()
                .map(|a| {
                    let total: u32 = a.iter().sum();
                    if total == 0 {
                        return 1.0;
                    }
                    // log of α^α / |α|^{|α|}, with 0^0 = 1
                    let log: f64 = a
                        .iter()
                        .filter(|e| **e > 0)
                        .map(|e| *e as f64 * (*e as f64).ln())
                        .sum::<f64>()
                        - total as f64 * (total as f64).ln();
                    if bp.is_infinite() {
                        1.0
                    } else {
                        (log / bp).exp()
                    }
                })
                .fold(0.0, f64::max)
        }
        Analog => {
            let n = positive(params.n, "n")?;
            let m = positive(params.m, "m")?;
            let bp = need(params.p.as_ref().and_then(|v| v.first().copied()), "p")?;
            if !(bp > 1.0) {
                return invalid(format!("parameter p must be > 1, got {bp}"));
            }
            let rp = conjugate(bp).max(2.0);
            (n * (1.0 + m.ln())).powf(1.0 / rp) * n.powf(m * excess(bp))
        }
    };
    Ok(value)
}

/// Constants `(M, ν)` of a Harris-type inequality `‖∇P‖ ≤ M m^ν ‖P‖`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarrisConstants {
    pub m: f64,
    pub nu: f64,
}

impl HarrisConstants {
    /// `M = e`, `ν = 1`; valid for every polynomial.
    pub const GENERAL: HarrisConstants = HarrisConstants { m: std::f64::consts::E, nu: 1.0 };
    /// `M = √e`, `ν = 1/2`; real homogeneous polynomials only.
    pub const REAL_HOMOGENEOUS: HarrisConstants = HarrisConstants {
        m: 1.648_721_270_700_128_2,
        nu: 0.5,
    };
}

/// Cardinality bound `(1 + 2 M m^ν)^{2n}` of a net on which a degree-`m`
/// polynomial in `n` variables attains half its ball sup.
pub fn ball_net_size(n: u32, m: u32, c: HarrisConstants) -> Result<f64> {
    if n == 0 || m == 0 {
        return invalid(format!("ball_net_size needs n, m >= 1, got n = {n}, m = {m}"));
    }
    if !(c.m > 0.0) || !c.nu.is_finite() || !c.m.is_finite() {
        return invalid(format!("ball_net_size needs M > 0 and finite ν, got {c:?}"));
    }
    Ok((1.0 + 2.0 * c.m * (m as f64).powf(c.nu)).powf(2.0 * n as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * (1.0 + b.abs())
    }

    #[test]
    fn examples() {
        let p = RhsParams { n: Some(1.0), m: Some(1.0), r: Some(2.0), ..Default::default() };
        assert!(close(ksz_rhs_bound(RhsTheorem::KszOne, &p).unwrap(), 1.0));
        let p = RhsParams { pi: Some(1), omega: Some(1), r: Some(2.0), ..Default::default() };
        assert!(close(ksz_rhs_bound(RhsTheorem::DirichletMain, &p).unwrap(), 2f64.sqrt()));
        for n in [4.0, 17.0, 256.0] {
            let p = RhsParams { n: Some(n), m: Some(2.0), p: Some(vec![2.0, 2.0]), ..Default::default() };
            assert!(close(ksz_rhs_bound(RhsTheorem::Gurgel, &p).unwrap(), n.sqrt()));
        }
    }

    #[test]
    fn gurgel_cube_exponent_is_three_halves() {
        let p = RhsParams { n: Some(16.0), p: Some(vec![f64::INFINITY; 2]), ..Default::default() };
        assert!(close(ksz_rhs_bound(RhsTheorem::Gurgel, &p).unwrap(), 16f64.powf(1.5)));
        assert_eq!(r_of_p(&[1.0, 2.0]).unwrap(), 2.0);
        assert_eq!(r_of_p(&[1.5]).unwrap(), 3.0);
    }

    #[test]
    fn other_factors() {
        let p = RhsParams { big_n: Some(1.0), r: Some(2.0), ..Default::default() };
        assert!(close(ksz_rhs_bound(RhsTheorem::Gateway, &p).unwrap(), std::f64::consts::E.powi(2) * 2f64.sqrt()));
        assert!(close(ksz_rhs_bound(RhsTheorem::Matrix, &p).unwrap(), 1.0));
        let p = RhsParams { big_n: Some(std::f64::consts::E.powi(3)), r: Some(4.0), ..Default::default() };
        assert!(close(ksz_rhs_bound(RhsTheorem::Matrix, &p).unwrap(), 4f64.powf(0.25)));
        let p = RhsParams { n: Some(2.0), m: Some(1.0), width: Some(8.0), r: Some(2.0), ..Default::default() };
        assert!(close(ksz_rhs_bound(RhsTheorem::KszOneWidth, &p).unwrap(), 2f64.sqrt()));
        let p = RhsParams { n_list: Some(vec![1.0, 2.0]), m: Some(1.0), r: Some(2.0), ..Default::default() };
        assert!(close(ksz_rhs_bound(RhsTheorem::KszMulti, &p).unwrap(), 3f64.sqrt()));
        let p = RhsParams { n: Some(9.0), m: Some(2.0), p: Some(vec![f64::INFINITY]), ..Default::default() };
        let want = (9.0 * (1.0 + 2f64.ln())).sqrt() * 9.0;
        assert!(close(ksz_rhs_bound(RhsTheorem::Analog, &p).unwrap(), want));
    }

    #[test]
    fn holder_factor() {
        // α = (1,1): α^α/|α|^{|α|} = 1/4
        let p = RhsParams { p: Some(vec![2.0]), alphas: Some(vec![vec![1, 1]]), ..Default::default() };
        assert!(close(ksz_rhs_bound(RhsTheorem::HolderMonomial, &p).unwrap(), 0.5));
        let p = RhsParams { p: Some(vec![1.0]), alphas: Some(vec![vec![1, 1], vec![2, 0]]), ..Default::default() };
        assert!(close(ksz_rhs_bound(RhsTheorem::HolderMonomial, &p).unwrap(), 1.0));
    }

    #[test]
    fn missing_symbols_are_named() {
        let err = ksz_rhs_bound(RhsTheorem::KszOne, &RhsParams { n: Some(1.0), r: Some(2.0), ..Default::default() })
            .unwrap_err()
            .to_string();
        assert!(err.contains('m'), "{err}");
        let err = ksz_rhs_bound(RhsTheorem::Matrix, &RhsParams { big_n: Some(3.0), r: Some(1.5), ..Default::default() })
            .unwrap_err()
            .to_string();
        assert!(err.contains("r"));
        let err = ksz_rhs_bound(RhsTheorem::DirichletMain, &RhsParams { r: Some(2.0), ..Default::default() })
            .unwrap_err()
            .to_string();
        assert!(err.contains("Pi"));
    }

    #[test]
    fn holder_sup_over_ball_matches_factor() {
        use crate::subgaussian::stream_rng;
        use rand::Rng;
        // sup_{z ∈ B_{ℓ_p^n}} (Σ|z_i|^{r'})^{1/r'} = n^{max{1/r' − 1/p, 0}}
        let mut rng = stream_rng(31, 0);
        for (n, p, r) in [(8usize, 4.0, 2.0), (16, f64::INFINITY, 2.0), (5, 1.5, 4.0), (10, 3.0, 3.0)] {
            let rc = r / (r - 1.0);
            let bound = (n as f64).powf((1.0 / rc - 1.0 / p).max(0.0));
            for _ in 0..1000 {
                let z: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
                let np = if p.is_infinite() {
                    z.iter().fold(0.0f64, |a, v| a.max(v.abs()))
                } else {
                    z.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p)
                };
                let s = z.iter().map(|v| (v.abs() / np).powf(rc)).sum::<f64>().powf(1.0 / rc);
                assert!(s <= bound * (1.0 + 1e-12));
            }
            let uniform = (n as f64).powf(-1.0 / p);
            let s = (n as f64 * uniform.powf(rc)).powf(1.0 / rc);
            if 1.0 / rc >= 1.0 / p {
                assert!((s - bound).abs() < 1e-9 * bound);
            }
        }
    }

    #[test]
    fn net_sizes() {
        let e = std::f64::consts::E;
        assert!(close(ball_net_size(1, 1, HarrisConstants::GENERAL).unwrap(), (1.0 + 2.0 * e).powi(2)));
        assert!(close(HarrisConstants::REAL_HOMOGENEOUS.m, e.sqrt()));
        let real = ball_net_size(3, 4, HarrisConstants::REAL_HOMOGENEOUS).unwrap();
        assert!(close(real, (1.0 + 4.0 * e.sqrt()).powi(6)));
        assert!(real < ball_net_size(3, 4, HarrisConstants::GENERAL).unwrap());
        assert!(ball_net_size(0, 2, HarrisConstants::GENERAL).is_err());
    }
}
