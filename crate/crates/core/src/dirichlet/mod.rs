//! Finitely supported Dirichlet polynomials `D(s) = Σ_{n∈A} a_n n^{-s}`.
//!
//! The Bohr lift sends `n = ∏ p_k^{α_k}` to the monomial `z^α`, turning `D`
//! into a polynomial on the torus `T^{Π(A)}` with the same sup norm; the
//! Kronecker flow `t ↦ (p_k^{-it})_k` is the dense curve along which the two
//! agree.

mod flow;
pub mod primes;

pub use flow::{default_step, kronecker_sup_flow, sup_lifted, DEFAULT_FLOW_T_MAX};

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::polys::{ksz_rhs_bound, Flavor, RhsParams, RhsTheorem, SparsePoly};
use primes::{factorize, first_primes, isqrt, prime_pi, sieve};

/// Largest supported support element.
pub const MAX_SUPPORT: u64 = 1 << 40;

/// Cap on `Π(A)·|A|` for materializing a lifted polynomial.
pub const MAX_LIFT_ENTRIES: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DirichletPoly {
    coeffs: BTreeMap<u64, Complex64>,
}

impl DirichletPoly {
    pub fn new<I>(coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Complex64)>,
    {
        let mut map = BTreeMap::new();
        for (n, a) in coeffs {
            if n == 0 {
                return invalid("Dirichlet polynomial indices start at 1");
            }
            if !a.re.is_finite() || !a.im.is_finite() {
                return invalid(format!("coefficient a_{n} is not finite"));
            }
            *map.entry(n).or_insert(Complex64::new(0.0, 0.0)) += a;
        }
        map.retain(|_, a| *a != Complex64::new(0.0, 0.0));
        Ok(DirichletPoly { coeffs: map })
    }

    pub fn coeffs(&self) -> &BTreeMap<u64, Complex64> {
        &self.coeffs
    }

    pub fn support(&self) -> BTreeSet<u64> {
        self.coeffs.keys().copied().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_index(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `Σ a_n n^{-it}`.
    pub fn eval_at(&self, t: f64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(n, a)| a * Complex64::from_polar(1.0, -t * (*n as f64).ln()))
            .sum()
    }

    pub fn l1_norm(&self) -> f64 {
        self.coeffs.values().map(|a| a.norm()).sum()
    }
}

/// Prime statistics of a finite set `A ⊂ ℕ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimeStats {
    /// `Π(A) = max_{n∈A} π(n)`.
    pub pi: u64,
    /// `Ω(A) = max_{n∈A} Ω(n)`, prime divisors counted with multiplicity.
    pub omega: u64,
    /// Sparse exponent vectors: `n ↦ [(k, α_k)]` with `k` the 0-based index
    /// of the prime `p_k` and `α_k > 0`.
    pub factorizations: BTreeMap<u64, Vec<(usize, u32)>>,
    /// Prime behind each index appearing in `factorizations`.
    pub primes: BTreeMap<usize, u64>,
}

impl PrimeStats {
    /// Dense exponent vector of `n` over the first `Π(A)` primes.
    pub fn exponent_vector(&self, n: u64) -> Option<Vec<u32>> {
        let sparse = self.factorizations.get(&n)?;
        let mut v = vec![0u32; self.pi as usize];
        for (k, e) in sparse {
            v[*k] = *e;
        }
        Some(v)
    }
}

const INDEX_SIEVE_LIMIT: u64 = 1 << 26;

pub fn prime_stats(a: &BTreeSet<u64>) -> Result<PrimeStats> {
    let Some(&max) = a.iter().next_back() else {
        return invalid("prime_stats: the set must be nonempty");
    };
    if a.contains(&0) {
        return invalid("prime_stats: 0 is not a valid index");
    }
    if max > MAX_SUPPORT {
        return Err(Error::Budget(format!("prime_stats supports n <= 2^40, got {max}")));
    }
    // every prime up to min(max, 2^26) is indexed by position; larger prime
    // factors fall back to π(p)
    let table = sieve(max.min(INDEX_SIEVE_LIMIT).max(isqrt(max)).max(2));
    let index_of = |p: u64| -> usize {
        match table.binary_search(&p) {
            Ok(k) => k,
            Err(_) => (prime_pi(p) - 1) as usize,
        }
    };
    let mut factorizations = BTreeMap::new();
    let mut primes_used = BTreeMap::new();
    let mut omega = 0u64;
    for &n in a {
        let f = factorize(n, &table);
        omega = omega.max(f.iter().map(|(_, e)| *e as u64).sum());
        let mut sparse = Vec::with_capacity(f.len());
        for (p, e) in f {
            let k = index_of(p);
            primes_used.insert(k, p);
            sparse.push((k, e));
        }
        factorizations.insert(n, sparse);
    }
    Ok(PrimeStats {
        pi: prime_pi(max),
        omega,
        factorizations,
        primes: primes_used,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostaPereiraCheck {
    pub pi_exact: u64,
    /// `x log 2 / log x`, valid for `x ≥ 5`.
    pub lower: f64,
    /// `5x / (3 log x)`, valid for `x > 1`.
    pub upper: f64,
    pub violation: bool,
}

/// Exact `π(x)` bracketed by `x log 2/log x ≤ π(x) ≤ 5x/(3 log x)`.
pub fn costa_pereira_check(x: f64) -> Result<CostaPereiraCheck> {
    if !(x >= 2.0) || !x.is_finite() {
        return invalid(format!("costa_pereira_check needs x >= 2, got {x}"));
    }
    let pi_exact = prime_pi(x.floor() as u64);
    let lx = x.ln();
    let lower = x * 2f64.ln() / lx;
    let upper = 5.0 * x / (3.0 * lx);
    let pi = pi_exact as f64;
    let violation = pi > upper || (x >= 5.0 && pi < lower);
    Ok(CostaPereiraCheck {
        pi_exact,
        lower,
        upper,
        violation,
    })
}

/// Bohr lift: `Σ a_n n^{-s} ↦ Σ a_n z^{α(n)}` as a monomial polynomial in
/// exactly `Π(A)` variables.
pub fn bohr_lift(d: &DirichletPoly) -> Result<SparsePoly> {
    let stats = prime_stats(&d.support())?;
    lift_with_stats(d, &stats)
}

pub(crate) fn lift_with_stats(d: &DirichletPoly, stats: &PrimeStats) -> Result<SparsePoly> {
    let entries = stats.pi.saturating_mul(d.coeffs.len() as u64);
    if entries > MAX_LIFT_ENTRIES {
        return Err(Error::Budget(format!(
            "lifted polynomial would hold {entries} exponent entries (limit {MAX_LIFT_ENTRIES})"
        )));
    }
    let n = stats.pi as usize;
    let terms = d.coeffs.iter().map(|(k, a)| {
        let alpha = stats
            .exponent_vector(*k)
            .expect("every support element is factorized")
            .into_iter()
            .map(|e| e as i32)
            .collect();
        (alpha, *a)
    });
    SparsePoly::new(n, Flavor::Monomial, terms)
}

/// Inverse of [`bohr_lift`]: maps `z^α` back to `n = ∏ p_k^{α_k}`.
pub fn unlift(p: &SparsePoly) -> Result<DirichletPoly> {
    if p.has_negative_exponents() {
        return invalid("unlift needs nonnegative exponents");
    }
    let primes = first_primes(p.n());
    let mut coeffs = Vec::with_capacity(p.term_count());
    for (alpha, c) in p.terms() {
        let mut n: u64 = 1;
        for (q, e) in primes.iter().zip(&alpha.0) {
            n = q
                .checked_pow(*e as u32)
                .and_then(|f| n.checked_mul(f))
                .ok_or_else(|| Error::InvalidArgument("unlifted index overflows u64".into()))?;
        }
        coeffs.push((n, *c));
    }
    DirichletPoly::new(coeffs)
}

/// `(1 + Π(A)(1 + 20 log Ω(A)))^{1/r}`.
pub fn dirichlet_rhs_bound(a: &BTreeSet<u64>, r: f64) -> Result<f64> {
    let stats = prime_stats(a)?;
    ksz_rhs_bound(
        RhsTheorem::DirichletMain,
        &RhsParams {
            pi: Some(stats.pi),
            omega: Some(stats.omega),
            r: Some(r),
            ..Default::default()
        },
    )
}
