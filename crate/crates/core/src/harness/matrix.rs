use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::norms::{orlicz_empirical_norm, s_norm, EmpiricalSample, OrliczExponent};
use crate::subgaussian::{stream_rng, GeneratorSpec};

pub const MAX_WITNESS_ROWS: usize = 20;
pub const MIN_MATRIX_TRIALS: usize = 100;

/// Vectors `a_1, …, a_K ∈ ℓ_∞^N` stored as a `K × N` row-major matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl CoefficientMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return invalid(format!("coefficient matrix needs K, N >= 1, got {rows} x {cols}"));
        }
        if entries.len() != rows * cols {
            return invalid(format!("expected {} entries for {rows} x {cols}, got {}", rows * cols, entries.len()));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return invalid("coefficient matrix entries must be finite");
        }
        Ok(CoefficientMatrix { rows, cols, entries })
    }

    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|v| Complex64::new(*v, 0.0)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// `a_i(j)`.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.entry(i, j)).collect()
    }

    /// `sup_j |Σ_i γ_i a_i(j)|`.
    pub fn sup_combination(&self, gammas: &[Complex64]) -> f64 {
        let mut acc = vec![Complex64::new(0.0, 0.0); self.cols];
        for (i, g) in gammas.iter().enumerate() {
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            for (a, v) in acc.iter_mut().zip(row) {
                *a += g * v;
            }
        }
        acc.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// `N = 2^K` columns enumerating every sign pattern: `a_i(j) = (−1)^{bit_i(j)}`.
pub fn sign_pattern_witness(k: usize) -> Result<CoefficientMatrix> {
    if k == 0 {
        return invalid("sign_pattern_witness needs K >= 1");
    }
    if k > MAX_WITNESS_ROWS {
        return Err(Error::Budget(format!(
            "sign_pattern_witness builds 2^{k} columns; the limit is K <= {MAX_WITNESS_ROWS}"
        )));
    }
    let n = 1usize << k;
    let entries = (0..k)
        .flat_map(|i| (0..n).map(move |j| if (j >> i) & 1 == 1 { -1.0 } else { 1.0 }))
        .map(|v| Complex64::new(v, 0.0))
        .collect();
    CoefficientMatrix::new(k, n, entries)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatrixStatistic {
    /// Empirical `φ_r` norm of `sup_j |Σ_i γ_i a_i(j)|`.
    pub lhs: f64,
    /// `sup_j ‖(a_i(j))_i‖_{S_{r'}}`.
    pub rhs: f64,
    /// Sample mean of the same statistic.
    pub mean: f64,
    /// Standard error of `mean`.
    pub stderr: f64,
}

/// Trial `k` draws its coefficients from stream `stream_base + k`.
pub fn ksz_matrix_statistic(
    m: &CoefficientMatrix,
    family: GeneratorSpec,
    r: OrliczExponent,
    trials: usize,
    seed: u64,
) -> Result<MatrixStatistic> {
    matrix_statistic_streams(m, family, r, trials, seed, 0)
}

pub(crate) fn matrix_statistic_streams(
    m: &CoefficientMatrix,
    family: GeneratorSpec,
    r: OrliczExponent,
    trials: usize,
    seed: u64,
    stream_base: u64,
) -> Result<MatrixStatistic> {
    if r.value() < 2.0 {
        return invalid(format!("ksz_matrix_statistic needs r >= 2, got {}", r.value()));
    }
    if trials < MIN_MATRIX_TRIALS {
        return invalid(format!("ksz_matrix_statistic needs at least {MIN_MATRIX_TRIALS} trials, got {trials}"));
    }
    let mut rhs = 0.0f64;
    for j in 0..m.cols() {
        rhs = rhs.max(s_norm(&m.column(j), r.value())?);
    }
    let values: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream_rng(seed, stream_base + t);
            let gammas: Vec<Complex64> = (0..m.rows()).map(|_| family.kind.sample(&mut rng)).collect();
            m.sup_combination(&gammas)
        })
        .collect();
    let (mean, stderr) = super::mean_and_stderr(&values);
    let lhs = orlicz_empirical_norm(&EmpiricalSample::new(values)?, r);
    Ok(MatrixStatistic { lhs, rhs, mean, stderr })
}
