use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    /// Exponents in `ℤ^n`, evaluated on the torus.
    Trig,
    /// Exponents in `ℕ₀^n`.
    Monomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<i32>);

impl MultiIndex {
    /// `|α| = Σ |α_k|`.
    pub fn order(&self) -> u32 {
        self.0.iter().map(|e| e.unsigned_abs()).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Finitely many terms `c_α z^α` in `n` variables.
///
/// Zero coefficients are never stored; duplicate indices are merged on
/// construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparsePoly {
    n: usize,
    flavor: Flavor,
    terms: BTreeMap<MultiIndex, Complex64>,
}

impl SparsePoly {
    pub fn new<I>(n: usize, flavor: Flavor, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i32>, Complex64)>,
    {
        let mut map: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
        for (alpha, c) in terms {
            if alpha.len() != n {
                return invalid(format!("multi-index {alpha:?} has length {}, expected {n}", alpha.len()));
            }
            if flavor == Flavor::Monomial && alpha.iter().any(|e| *e < 0) {
                return invalid(format!("monomial multi-index {alpha:?} has a negative exponent"));
            }
            if !c.re.is_finite() || !c.im.is_finite() {
                return invalid(format!("coefficient {c} is not finite"));
            }
            *map.entry(MultiIndex(alpha)).or_default() += c;
        }
        map.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Ok(SparsePoly { n, flavor, terms: map })
    }

    pub fn zero(n: usize, flavor: Flavor) -> Self {
        SparsePoly {
            n,
            flavor,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, alpha: &[i32]) -> Complex64 {
        self.terms
            .get(&MultiIndex(alpha.to_vec()))
            .copied()
            .unwrap_or_default()
    }

    /// `max |α|` over stored terms; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::order).max().unwrap_or(0)
    }

    /// Largest `|α_k|` for each variable.
    pub fn axis_degrees(&self) -> Vec<u32> {
        let mut d = vec![0u32; self.n];
        for alpha in self.terms.keys() {
            for (dk, e) in d.iter_mut().zip(&alpha.0) {
                *dk = (*dk).max(e.unsigned_abs());
            }
        }
        d
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im == 0.0)
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|a| a.0.iter().any(|e| *e < 0))
    }

    /// Every variable appears with exponent at most 1 in every term.
    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(|a| a.0.iter().all(|e| (0..=1).contains(e)))
    }

    /// Product of two polynomials in the same number of variables.
    pub fn mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        if self.n != other.n {
            return invalid(format!("cannot multiply polynomials in {} and {} variables", self.n, other.n));
        }
        let flavor = if self.flavor == Flavor::Trig || other.flavor == Flavor::Trig {
            Flavor::Trig
        } else {
            Flavor::Monomial
        };
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let idx = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
                out.push((idx, ca * cb));
            }
        }
        SparsePoly::new(self.n, flavor, out)
    }

    /// Value and partial derivatives at `z`.
    pub(crate) fn eval_with_gradient(&self, z: &[Complex64]) -> (Complex64, Vec<Complex64>) {
        let mut value = Complex64::new(0.0, 0.0);
        let mut grad = vec![Complex64::new(0.0, 0.0); self.n];
        for (alpha, c) in &self.terms {
            let mut term = *c;
            for (zk, e) in z.iter().zip(&alpha.0) {
                term *= zk.powi(*e);
            }
            value += term;
            for (k, e) in alpha.0.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let mut d = *c * (*e as f64);
                for (l, (zl, el)) in z.iter().zip(&alpha.0).enumerate() {
                    let pow = if l == k { el - 1 } else { *el };
                    d *= zl.powi(pow);
                }
                grad[k] += d;
            }
        }
        (value, grad)
    }
}

/// `Σ c_α z^α`.
pub fn eval_poly(p: &SparsePoly, z: &[Complex64]) -> Result<Complex64> {
    if z.len() != p.n {
        return invalid(format!("point has {} coordinates, polynomial has {} variables", z.len(), p.n));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (alpha, c) in &p.terms {
        let mut term = *c;
        for (zk, e) in z.iter().zip(&alpha.0) {
            if *e < 0 && zk.norm() == 0.0 {
                return invalid("negative exponent at a zero coordinate");
            }
            term *= zk.powi(*e);
        }
        acc += term;
    }
    Ok(acc)
}
