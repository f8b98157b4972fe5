//! Seeded Monte Carlo experiments comparing KSZ left-hand sides with their
//! constant-free right-hand-side factors.
//!
//! Every trial owns a ChaCha stream derived from `(seed, experiment, size
//! index, trial index)`, and per-trial values are reduced in index order, so
//! a report depends only on its [`ExperimentSpec`] and never on the thread
//! count.

mod matrix;
mod report;

use std::collections::BTreeSet;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

pub use matrix::{ksz_matrix_statistic, sign_pattern_witness, CoefficientMatrix, MatrixStatistic, MAX_WITNESS_ROWS};
pub use report::{fit_slope, Bands, Meta, Report, Row, Slope, SlopeFit};

use crate::dirichlet::{default_step, dirichlet_rhs_bound, kronecker_sup_flow, DirichletPoly, DEFAULT_FLOW_T_MAX};
use crate::error::{invalid, Error, Result};
use crate::interp::{k_method_norm, QFunction};
use crate::norms::{orlicz_empirical_norm, s_norm, weak_norm, EmpiricalSample, OrliczExponent};
use crate::polys::{
    bernstein_points_per_axis, ksz_rhs_bound, spectral_norm_real, sup_ball, sup_multilinear, Flavor, MultilinearForm,
    RhsParams, RhsTheorem, SearchStrategy, SparsePoly,
};
use crate::subgaussian::{stream_rng, GeneratorKind, GeneratorSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExperimentId {
    #[serde(rename = "E1_MatrixKSZ")]
    E1MatrixKsz,
    #[serde(rename = "E2_SalemZygmund1D")]
    E2SalemZygmund1D,
    #[serde(rename = "E3_CubeQuadratic")]
    E3CubeQuadratic,
    #[serde(rename = "E4_SpectralBilinear")]
    E4SpectralBilinear,
    #[serde(rename = "E5_Dirichlet")]
    E5Dirichlet,
    #[serde(rename = "E6_InterpIdentification")]
    E6InterpIdentification,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 6] = [
        ExperimentId::E1MatrixKsz,
        ExperimentId::E2SalemZygmund1D,
        ExperimentId::E3CubeQuadratic,
        ExperimentId::E4SpectralBilinear,
        ExperimentId::E5Dirichlet,
        ExperimentId::E6InterpIdentification,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentId::E1MatrixKsz => "E1_MatrixKSZ",
            ExperimentId::E2SalemZygmund1D => "E2_SalemZygmund1D",
            ExperimentId::E3CubeQuadratic => "E3_CubeQuadratic",
            ExperimentId::E4SpectralBilinear => "E4_SpectralBilinear",
            ExperimentId::E5Dirichlet => "E5_Dirichlet",
            ExperimentId::E6InterpIdentification => "E6_InterpIdentification",
        }
    }

    pub fn default_trials(self) -> usize {
        match self {
            ExperimentId::E1MatrixKsz | ExperimentId::E2SalemZygmund1D => 10_000,
            ExperimentId::E3CubeQuadratic | ExperimentId::E5Dirichlet => 100,
            ExperimentId::E4SpectralBilinear => 200,
            ExperimentId::E6InterpIdentification => 1000,
        }
    }

    /// `(smallest, largest)` admissible size.
    pub fn size_limits(self) -> (u64, u64) {
        match self {
            ExperimentId::E1MatrixKsz => (1, MAX_WITNESS_ROWS as u64),
            ExperimentId::E2SalemZygmund1D => (1, 4096),
            ExperimentId::E3CubeQuadratic => (2, 16),
            ExperimentId::E4SpectralBilinear => (1, 256),
            ExperimentId::E5Dirichlet => (1, 10_000),
            ExperimentId::E6InterpIdentification => (1, 1 << 16),
        }
    }

    pub fn bands(self) -> Bands {
        let none = Bands::default();
        match self {
            ExperimentId::E1MatrixKsz => Bands {
                ratio_min: Some(0.8),
                ratio_cap: Some(2.0),
                ratio_trend: Some(0.1),
                ..none
            },
            ExperimentId::E2SalemZygmund1D => Bands {
                mean_slope: Some((0.45, 0.60)),
                ratio_cap: Some(2.0),
                ratio_trend: Some(0.1),
                ..none
            },
            ExperimentId::E3CubeQuadratic => Bands {
                mean_slope: Some((1.35, 1.65)),
                ..none
            },
            ExperimentId::E4SpectralBilinear => Bands {
                mean_slope: Some((0.45, 0.55)),
                ..none
            },
            ExperimentId::E5Dirichlet => Bands {
                ratio_cap: Some(2.0),
                ratio_trend: Some(0.15),
                ..none
            },
            ExperimentId::E6InterpIdentification => Bands {
                ratio_trend: Some(0.1),
                ratio_band_width: Some(10.0),
                ..none
            },
        }
    }

    fn index(self) -> u64 {
        ExperimentId::ALL.iter().position(|e| *e == self).unwrap() as u64 + 1
    }
}

impl std::fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub id: ExperimentId,
    pub family: GeneratorSpec,
    pub r: OrliczExponent,
    pub sizes: Vec<u64>,
    /// Defaults to [`ExperimentId::default_trials`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    pub seed: u64,
}

impl ExperimentSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ExperimentSpec = serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("invalid experiment spec: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn trials(&self) -> usize {
        self.trials.unwrap_or_else(|| self.id.default_trials())
    }

    pub fn validate(&self) -> Result<()> {
        let id = self.id;
        if self.sizes.is_empty() {
            return invalid(format!("{id}: sizes must be nonempty"));
        }
        if self.sizes.windows(2).any(|w| w[1] <= w[0]) {
            return invalid(format!("{id}: sizes must be strictly increasing"));
        }
        if self.trials() == 0 {
            return invalid(format!("{id}: trials must be at least 1"));
        }
        if self.r.value() < 2.0 {
            return invalid(format!("{id}: r must be >= 2, got {}", self.r.value()));
        }
        let (lo, hi) = id.size_limits();
        if let Some(s) = self.sizes.iter().find(|s| **s < lo) {
            return invalid(format!("{id}: size {s} is below the minimum {lo}"));
        }
        if let Some(s) = self.sizes.iter().find(|s| **s > hi) {
            return Err(Error::Budget(format!("{id}: size {s} exceeds the cap {hi}")));
        }
        if id == ExperimentId::E1MatrixKsz && self.trials() < matrix::MIN_MATRIX_TRIALS {
            return invalid(format!("{id}: needs at least {} trials", matrix::MIN_MATRIX_TRIALS));
        }
        if id == ExperimentId::E3CubeQuadratic && self.family.is_complex() {
            return invalid(format!("{id}: needs a real coefficient family"));
        }
        Ok(())
    }
}

/// The specifications run by `experiment suite`.
pub fn suite_specs() -> Vec<ExperimentSpec> {
    let spec = |id, kind, r: f64, sizes: Vec<u64>, trials: usize, seed| ExperimentSpec {
        id,
        family: GeneratorSpec::new(kind),
        r: OrliczExponent::new(r).expect("suite exponents are valid"),
        sizes,
        trials: Some(trials),
        seed,
    };
    use ExperimentId::*;
    use GeneratorKind::*;
    vec![
        spec(E1MatrixKsz, RademacherReal, 2.0, (2..=12).collect(), 10_000, 1),
        spec(E2SalemZygmund1D, RademacherReal, 2.0, vec![16, 32, 64, 128, 256, 512, 1024], 1000, 2),
        spec(E3CubeQuadratic, RademacherReal, 2.0, vec![4, 6, 8, 10, 12, 14, 16], 100, 3),
        spec(E4SpectralBilinear, RademacherReal, 2.0, vec![16, 32, 64, 128, 256], 200, 4),
        spec(E5Dirichlet, RademacherReal, 2.0, vec![16, 32, 64, 128], 100, 5),
        spec(E6InterpIdentification, GaussianReal, 4.0, vec![16, 64, 512], 1000, 6),
    ]
}

/// Runs every suite experiment and writes `<dir>/<id>.json`.
pub fn run_suite(dir: &Path) -> Result<Vec<Report>> {
    std::fs::create_dir_all(dir)?;
    let mut reports = Vec::new();
    for spec in suite_specs() {
        let report = run_experiment(&spec)?;
        std::fs::write(dir.join(format!("{}.json", spec.id)), report.to_json()?)?;
        reports.push(report);
    }
    Ok(reports)
}

pub(crate) fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = pairwise_sum(values) / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let dev: Vec<f64> = values.iter().map(|v| (v - mean).powi(2)).collect();
    let var = pairwise_sum(&dev) / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 16 {
        return v.iter().sum();
    }
    let (a, b) = v.split_at(v.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

fn stream_base(id: ExperimentId, size_index: usize) -> u64 {
    (id.index() << 56) | ((size_index as u64) << 40)
}

/// Runs `f` once per trial on its own stream, collecting in trial order.
fn per_trial<T: Send>(
    trials: usize,
    seed: u64,
    base: u64,
    f: impl Fn(&mut rand_chacha::ChaCha8Rng) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    (0..trials as u64)
        .into_par_iter()
        .map(|t| f(&mut stream_rng(seed, base + t)))
        .collect()
}

fn row(size: u64, driver: f64, values: Vec<f64>, rhs: f64, r: OrliczExponent) -> Result<Row> {
    let (mean, stderr) = mean_and_stderr(&values);
    let lhs = orlicz_empirical_norm(&EmpiricalSample::new(values)?, r);
    Ok(Row {
        size,
        driver,
        lhs,
        rhs,
        ratio: lhs / rhs,
        stderr,
        mean,
    })
}

fn ones(n: usize) -> Vec<Complex64> {
    vec![Complex64::new(1.0, 0.0); n]
}

/// Runs one experiment; see [`ExperimentId`] for the registered bands.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Report> {
    spec.validate()?;
    let trials = spec.trials();
    let r = spec.r;
    let kind = spec.family.kind;
    let mut rows = Vec::with_capacity(spec.sizes.len());
    let mut ratio_band: Option<(f64, f64)> = None;
    let (lhs_desc, rhs_desc, driver_desc) = descriptions(spec.id);

    for (si, &size) in spec.sizes.iter().enumerate() {
        let base = stream_base(spec.id, si);
        let n = size as usize;
        let row = match spec.id {
            ExperimentId::E1MatrixKsz => {
                let w = sign_pattern_witness(n)?;
                let stat = matrix::matrix_statistic_streams(&w, spec.family, r, trials, spec.seed, base)?;
                let big_n = w.cols() as f64;
                let factor = ksz_rhs_bound(
                    RhsTheorem::Matrix,
                    &RhsParams {
                        big_n: Some(big_n),
                        r: Some(r.value()),
                        ..Default::default()
                    },
                )?;
                let rhs = stat.rhs * factor;
                Row {
                    size,
                    driver: big_n,
                    lhs: stat.lhs,
                    rhs,
                    ratio: stat.lhs / rhs,
                    stderr: stat.stderr,
                    mean: stat.mean,
                }
            }
            ExperimentId::E2SalemZygmund1D => {
                let grid = (bernstein_points_per_axis(size as u32) as usize).next_power_of_two();
                let fft = FftPlanner::<f64>::new().plan_fft_inverse(grid);
                let values = per_trial(trials, spec.seed, base, |rng| {
                    let mut buf = vec![Complex64::new(0.0, 0.0); grid];
                    for b in buf.iter_mut().take(n + 1) {
                        *b = kind.sample(rng);
                    }
                    fft.process(&mut buf);
                    Ok(buf.iter().map(|z| z.norm()).fold(0.0, f64::max))
                })?;
                let factor = ksz_rhs_bound(
                    RhsTheorem::KszOne,
                    &RhsParams {
                        n: Some(1.0),
                        m: Some(size as f64),
                        r: Some(r.value()),
                        ..Default::default()
                    },
                )?;
                row(size, size as f64, values, factor * s_norm(&ones(n + 1), r.value())?, r)?
            }
            ExperimentId::E3CubeQuadratic => {
                let values = per_trial(trials, spec.seed, base, |rng| {
                    let mut terms = Vec::with_capacity(n * (n - 1) / 2);
                    for i in 0..n {
                        for j in i + 1..n {
                            let mut alpha = vec![0i32; n];
                            alpha[i] = 1;
                            alpha[j] = 1;
                            terms.push((alpha, Complex64::new(kind.sample_real(rng), 0.0)));
                        }
                    }
                    let q = SparsePoly::new(n, Flavor::Monomial, terms)?;
                    Ok(sup_ball(&q, f64::INFINITY, SearchStrategy::VertexExact)?.lower)
                })?;
                let rhs = ksz_rhs_bound(
                    RhsTheorem::Analog,
                    &RhsParams {
                        n: Some(size as f64),
                        m: Some(2.0),
                        p: Some(vec![f64::INFINITY]),
                        ..Default::default()
                    },
                )?;
                row(size, size as f64, values, rhs, r)?
            }
            ExperimentId::E4SpectralBilinear => {
                let values = per_trial(trials, spec.seed, base, |rng| {
                    if kind.is_complex() {
                        let entries = (0..n * n).map(|_| kind.sample(rng)).collect();
                        let form = MultilinearForm::bilinear(n, n, entries)?;
                        Ok(sup_multilinear(&form, &[2.0, 2.0], SearchStrategy::Spectral)?.lower)
                    } else {
                        let entries: Vec<f64> = (0..n * n).map(|_| kind.sample_real(rng)).collect();
                        Ok(spectral_norm_real(n, n, &entries))
                    }
                })?;
                let rhs = ksz_rhs_bound(
                    RhsTheorem::Gurgel,
                    &RhsParams {
                        n: Some(size as f64),
                        m: Some(2.0),
                        p: Some(vec![2.0, 2.0]),
                        ..Default::default()
                    },
                )?;
                row(size, size as f64, values, rhs, r)?
            }
            ExperimentId::E5Dirichlet => {
                let support: BTreeSet<u64> = (1..=size).collect();
                let values = per_trial(trials, spec.seed, base, |rng| {
                    let d = DirichletPoly::new((1..=size).map(|k| (k, kind.sample(rng))))?;
                    Ok(kronecker_sup_flow(&d, DEFAULT_FLOW_T_MAX, default_step(&d))?.lower)
                })?;
                let rhs = dirichlet_rhs_bound(&support, r.value())? * s_norm(&ones(n), r.value())?;
                row(size, size as f64, values, rhs, r)?
            }
            ExperimentId::E6InterpIdentification => {
                let rv = r.value();
                let r_conj = if rv.is_infinite() { 1.0 } else { rv / (rv - 1.0) };
                let psi = QFunction::power(2.0 / rv)?;
                let pairs = per_trial(trials, spec.seed, base, |rng| {
                    let x: Vec<Complex64> = (0..n).map(|_| kind.sample(rng)).collect();
                    Ok((k_method_norm(&x, &psi, 8)?, weak_norm(&x, r_conj)?))
                })?;
                for (k, w) in &pairs {
                    if *w > 0.0 {
                        let q = k / w;
                        ratio_band = Some(match ratio_band {
                            None => (q, q),
                            Some((lo, hi)) => (lo.min(q), hi.max(q)),
                        });
                    }
                }
                let (ks, ws): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
                let (mean, stderr) = mean_and_stderr(&ks);
                let (rhs, _) = mean_and_stderr(&ws);
                Row {
                    size,
                    driver: size as f64,
                    lhs: mean,
                    rhs,
                    ratio: mean / rhs,
                    stderr,
                    mean,
                }
            }
        };
        rows.push(row);
    }

    let meta = Meta {
        spec: spec.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        trials,
        lhs: lhs_desc.into(),
        rhs: rhs_desc.into(),
        driver: driver_desc.into(),
        bands: spec.id.bands(),
        ratio_band,
        notes: vec![
            "empirical Orlicz norms of finite samples underestimate the tail contribution".into(),
            "slopes are least-squares fits of log value against log driver; half_width is two standard errors".into(),
        ],
    };
    Report::assemble(rows, meta)
}

fn descriptions(id: ExperimentId) -> (&'static str, &'static str, &'static str) {
    match id {
        ExperimentId::E1MatrixKsz => (
            "phi_r norm of sup_j |sum_i g_i a_i(j)| on the sign-pattern witness",
            "sup_j S_r'(column j) * (1 + log N)^(1/r)",
            "N = 2^K",
        ),
        ExperimentId::E2SalemZygmund1D => (
            "phi_r norm of sup over the circle of sum_{k<=m} g_k z^k",
            "(1 + log m)^(1/r) * S_r'(1, ..., 1)",
            "m",
        ),
        ExperimentId::E3CubeQuadratic => (
            "phi_r norm of sup over [-1,1]^n of |sum_{i<j} g_ij x_i x_j|",
            "(n (1 + log 2))^(1/2) * n",
            "n",
        ),
        ExperimentId::E4SpectralBilinear => (
            "phi_r norm of the largest singular value of an n x n random matrix",
            "n^(1/2)",
            "n",
        ),
        ExperimentId::E5Dirichlet => (
            "phi_r norm of the Kronecker-flow sup of sum_{k<=N} g_k k^(-it), t <= 1e4",
            "(1 + Pi (1 + 20 log Omega))^(1/r) * S_r'(1, ..., 1)",
            "N",
        ),
        ExperimentId::E6InterpIdentification => (
            "mean K-method (psi, inf) norm with psi = s^(1-2/r) t^(2/r)",
            "mean weak l_(r') norm",
            "length",
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(id: ExperimentId, sizes: Vec<u64>, trials: usize) -> ExperimentSpec {
        ExperimentSpec {
            id,
            family: GeneratorSpec::rademacher(),
            r: OrliczExponent::new(2.0).unwrap(),
            sizes,
            trials: Some(trials),
            seed: 42,
        }
    }

    #[test]
    fn spec_json_roundtrip() {
        let text = r#"{"id": "E4_SpectralBilinear", "family": {"kind": "RademacherReal"}, "r": 2, "sizes": [16,32,64,128,256], "trials": 200, "seed": 42}"#;
        let s = ExperimentSpec::from_json(text).unwrap();
        assert_eq!(s.id, ExperimentId::E4SpectralBilinear);
        assert_eq!(s.trials(), 200);
        let back = ExperimentSpec::from_json(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
        let no_trials = r#"{"id": "E2_SalemZygmund1D", "family": {"kind": "SteinhausComplex"}, "r": 2, "sizes": [4], "seed": 1}"#;
        assert_eq!(ExperimentSpec::from_json(no_trials).unwrap().trials(), 10_000);
    }

    #[test]
    fn spec_validation() {
        assert!(spec(ExperimentId::E2SalemZygmund1D, vec![], 10).validate().is_err());
        assert!(spec(ExperimentId::E2SalemZygmund1D, vec![8, 8], 10).validate().is_err());
        assert!(spec(ExperimentId::E2SalemZygmund1D, vec![8], 0).validate().is_err());
        assert!(matches!(spec(ExperimentId::E2SalemZygmund1D, vec![8192], 10).validate(), Err(Error::Budget(m)) if m.contains("E2_SalemZygmund1D")));
        assert!(matches!(spec(ExperimentId::E3CubeQuadratic, vec![17], 10).validate(), Err(Error::Budget(_))));
        assert!(matches!(spec(ExperimentId::E4SpectralBilinear, vec![512], 10).validate(), Err(Error::Budget(_))));
        assert!(matches!(spec(ExperimentId::E5Dirichlet, vec![10_001], 10).validate(), Err(Error::Budget(_))));
        assert!(spec(ExperimentId::E1MatrixKsz, vec![2], 50).validate().is_err());
        let mut complex_cube = spec(ExperimentId::E3CubeQuadratic, vec![4], 10);
        complex_cube.family = GeneratorSpec::steinhaus();
        assert!(complex_cube.validate().is_err());
        let mut low_r = spec(ExperimentId::E4SpectralBilinear, vec![4], 10);
        low_r.r = OrliczExponent::new(1.5).unwrap();
        assert!(low_r.validate().is_err());
        assert!(ExperimentSpec::from_json(r#"{"id": "E9", "family": {"kind": "RademacherReal"}, "r": 2, "sizes": [4], "seed": 1}"#).is_err());
    }

    #[test]
    fn e1_witness_rows() {
        let report = run_experiment(&spec(ExperimentId::E1MatrixKsz, (2..=6).collect(), 100)).unwrap();
        for row in &report.rows {
            let k = row.size as f64;
            assert!((row.lhs - k / 2f64.ln().sqrt()).abs() < 1e-9);
            let expected_rhs = k.sqrt() * (1.0 + k * 2f64.ln()).sqrt();
            assert!((row.rhs - expected_rhs).abs() < 1e-9);
            assert!(row.ratio >= 0.8);
            assert_eq!(row.ratio, row.lhs / row.rhs);
        }
        assert!(report.band_violations().is_empty());
    }

    #[test]
    fn small_runs_are_deterministic_across_thread_counts() {
        let specs = [
            spec(ExperimentId::E2SalemZygmund1D, vec![4, 8, 16], 50),
            spec(ExperimentId::E3CubeQuadratic, vec![3, 4, 5], 20),
            spec(ExperimentId::E4SpectralBilinear, vec![2, 4, 8], 20),
            spec(ExperimentId::E5Dirichlet, vec![2, 4, 8], 5),
            spec(ExperimentId::E6InterpIdentification, vec![4, 8, 16], 20),
        ];
        for s in &specs {
            let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
            let a = one.install(|| run_experiment(s)).unwrap().to_json().unwrap();
            let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
            let b = four.install(|| run_experiment(s)).unwrap().to_json().unwrap();
            assert_eq!(a, b, "{}", s.id);
            let report = run_experiment(s).unwrap();
            assert_eq!(report.rows.len(), 3);
            assert!(report.rows.windows(2).all(|w| w[0].size < w[1].size));
            assert!(report.rows.iter().all(|r| r.lhs > 0.0 && r.rhs > 0.0));
        }
    }

    #[test]
    fn seed_changes_the_sample() {
        let mut s = spec(ExperimentId::E4SpectralBilinear, vec![4, 8, 16], 20);
        let a = run_experiment(&s).unwrap();
        s.seed += 1;
        let b = run_experiment(&s).unwrap();
        assert_ne!(a.rows[0].lhs, b.rows[0].lhs);
    }

    #[test]
    fn csv_layout() {
        let report = run_experiment(&spec(ExperimentId::E4SpectralBilinear, vec![2, 3, 4], 10)).unwrap();
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "size,lhs,rhs,ratio,stderr");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("2,"));
    }

    #[test]
    fn mean_and_stderr_examples() {
        assert_eq!(mean_and_stderr(&[2.0; 40]), (2.0, 0.0));
        let (m, s) = mean_and_stderr(&[1.0, 3.0]);
        assert_eq!(m, 2.0);
        assert!((s - 1.0).abs() < 1e-15);
    }
}
