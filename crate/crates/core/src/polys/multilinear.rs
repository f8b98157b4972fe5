use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::ball::MAX_VERTEX_DIM;
use super::{dual_maximizer, lp, SearchOptions, SearchStrategy, SupEstimate, SupMethod};
use crate::error::{invalid, Error, Result};
use crate::subgaussian::{stream_rng, GeneratorKind};

/// Dense coefficient tensor `c_𝔧` of an `m`-linear form on
/// `K^{n₁} × ⋯ × K^{n_m}`, stored row-major (last index fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct MultilinearForm {
    dims: Vec<usize>,
    coeffs: Vec<Complex64>,
}

impl MultilinearForm {
    pub fn new(dims: Vec<usize>, coeffs: Vec<Complex64>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return invalid("multilinear form needs m >= 1 factors of positive dimension");
        }
        let size: usize = dims.iter().product();
        if coeffs.len() != size {
            return invalid(format!("tensor has {} entries, dims require {size}", coeffs.len()));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return invalid("tensor entries must be finite");
        }
        Ok(MultilinearForm { dims, coeffs })
    }

    /// Bilinear form `x^T A y` from a row-major `rows × cols` matrix.
    pub fn bilinear(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        Self::new(vec![rows, cols], entries)
    }

    pub fn bilinear_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::bilinear(rows, cols, entries.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn m(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    /// Contracts every factor except `skip` (pass `usize::MAX` to contract
    /// all of them), innermost factor first.
    fn contract_except(&self, zs: &[Vec<Complex64>], skip: usize) -> Vec<Complex64> {
        let mut cur = self.coeffs.clone();
        let mut trailing = 1usize; // size of the kept skip axis at the tail
        for j in (0..self.m()).rev() {
            let nj = self.dims[j];
            if j == skip {
                // move the kept axis behind: reorder so that it stays innermost
                trailing = nj;
                continue;
            }
            let outer = cur.len() / (nj * trailing);
            let mut next = vec![Complex64::new(0.0, 0.0); outer * trailing];
            for o in 0..outer {
                for (k, zk) in zs[j].iter().enumerate() {
                    let base = (o * nj + k) * trailing;
                    for t in 0..trailing {
                        next[o * trailing + t] += cur[base + t] * zk;
                    }
                }
            }
            cur = next;
        }
        cur
    }
}

/// `Σ_𝔧 c_𝔧 ∏_j z_j(j_j)`.
pub fn eval_multilinear(form: &MultilinearForm, zs: &[Vec<Complex64>]) -> Result<Complex64> {
    check_points(form, zs)?;
    Ok(form.contract_except(zs, usize::MAX)[0])
}

fn check_points(form: &MultilinearForm, zs: &[Vec<Complex64>]) -> Result<()> {
    if zs.len() != form.m() {
        return invalid(format!("expected {} vectors, got {}", form.m(), zs.len()));
    }
    for (j, (z, n)) in zs.iter().zip(form.dims()).enumerate() {
        if z.len() != *n {
            return invalid(format!("vector {j} has length {}, expected {n}", z.len()));
        }
    }
    Ok(())
}

/// Largest singular value of a real matrix.
pub fn spectral_norm_real(rows: usize, cols: usize, entries: &[f64]) -> f64 {
    let m = DMatrix::from_row_slice(rows, cols, entries);
    m.singular_values().max()
}

pub fn sup_multilinear(form: &MultilinearForm, ps: &[f64], strategy: SearchStrategy) -> Result<SupEstimate> {
    sup_multilinear_with(form, ps, strategy, &SearchOptions::default())
}

/// Sup of `|L(z₁, …, z_m)|` over `B_{ℓ_{p₁}} × ⋯ × B_{ℓ_{p_m}}`.
pub fn sup_multilinear_with(
    form: &MultilinearForm,
    ps: &[f64],
    strategy: SearchStrategy,
    opts: &SearchOptions,
) -> Result<SupEstimate> {
    if ps.len() != form.m() {
        return invalid(format!("expected {} exponents, got {}", form.m(), ps.len()));
    }
    if let Some(bad) = ps.iter().find(|p| !(**p >= 1.0)) {
        return invalid(format!("ball exponents must be >= 1, got {bad}"));
    }
    match strategy {
        SearchStrategy::Spectral => spectral(form, ps),
        SearchStrategy::VertexExact => vertex_exact(form, ps),
        SearchStrategy::MultistartSearch => Ok(alternating(form, ps, opts)),
    }
}

fn spectral(form: &MultilinearForm, ps: &[f64]) -> Result<SupEstimate> {
    if form.m() != 2 || ps != [2.0, 2.0] {
        return invalid("Spectral strategy requires a bilinear form with p = (2, 2)");
    }
    let (r, c) = (form.dims[0], form.dims[1]);
    let a = DMatrix::from_row_slice(r, c, &form.coeffs);
    let svd = a.svd(true, true);
    let (u, v_t) = (svd.u.expect("u requested"), svd.v_t.expect("v_t requested"));
    let (mut k, mut sigma) = (0usize, f64::NEG_INFINITY);
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s > sigma {
            sigma = *s;
            k = i;
        }
    }
    // A = U Σ V^H, so x = conj(u_k), y = conj(row k of V^H) gives x^T A y = σ_k
    let x: Vec<Complex64> = u.column(k).iter().map(|z| z.conj()).collect();
    let y: Vec<Complex64> = v_t.row(k).iter().map(|z| z.conj()).collect();
    let witness = x.into_iter().chain(y).collect();
    Ok(SupEstimate::exact(sigma, SupMethod::Spectral, witness))
}

/// Exact sup over products of real cubes: enumerate the sign vertices of the
/// first `m−1` factors and maximize the last factor in closed form
/// (`Σ_k |b_k|`).
fn vertex_exact(form: &MultilinearForm, ps: &[f64]) -> Result<SupEstimate> {
    if !form.is_real() {
        return invalid("VertexExact requires real coefficients");
    }
    if ps.iter().any(|p| !p.is_infinite()) {
        return invalid("VertexExact requires every p_j = infinity");
    }
    let total: usize = form.dims.iter().sum();
    if total > MAX_VERTEX_DIM {
        return Err(Error::Budget(format!(
            "VertexExact needs sum n_j <= {MAX_VERTEX_DIM}, got {total}"
        )));
    }
    let m = form.m();
    let free: usize = form.dims[..m - 1].iter().sum();
    let last = form.dims[m - 1];
    let signs = |mask: u64| -> Vec<Vec<Complex64>> {
        let mut out = Vec::with_capacity(m);
        let mut bit = 0;
        for n in &form.dims[..m - 1] {
            out.push(
                (0..*n)
                    .map(|_| {
                        let s = if mask >> bit & 1 == 1 { -1.0 } else { 1.0 };
                        bit += 1;
                        Complex64::new(s, 0.0)
                    })
                    .collect(),
            );
        }
        out.push(vec![Complex64::new(0.0, 0.0); last]);
        out
    };
    let (best, mask) = (0..(1u64 << free))
        .into_par_iter()
        .map(|mask| {
            let zs = signs(mask);
            let b = form.contract_except(&zs, m - 1);
            (b.iter().map(|v| v.re.abs()).sum::<f64>(), mask)
        })
        .reduce(
            || (f64::NEG_INFINITY, u64::MAX),
            |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a },
        );
    let mut zs = signs(mask);
    let b = form.contract_except(&zs, m - 1);
    zs[m - 1] = b
        .iter()
        .map(|v| Complex64::new(if v.re < 0.0 { -1.0 } else { 1.0 }, 0.0))
        .collect();
    Ok(SupEstimate::exact(best, SupMethod::VertexExact, zs.concat()))
}

/// Alternating maximization: with all but one factor fixed the form is a
/// linear functional whose sup over `B_{ℓ_p}` is attained in closed form.
fn alternating(form: &MultilinearForm, ps: &[f64], opts: &SearchOptions) -> SupEstimate {
    let complex = !form.is_real();
    let kind = if complex {
        GeneratorKind::GaussianComplex
    } else {
        GeneratorKind::GaussianReal
    };
    let m = form.m();
    let (lower, _, witness) = (0..opts.starts.max(1))
        .into_par_iter()
        .map(|s| {
            let mut rng = stream_rng(opts.seed, s as u64);
            let mut zs: Vec<Vec<Complex64>> = form
                .dims
                .iter()
                .zip(ps)
                .map(|(n, p)| {
                    let z: Vec<Complex64> = (0..*n).map(|_| kind.sample(&mut rng)).collect();
                    let norm = lp(&z, *p).max(f64::MIN_POSITIVE);
                    z.into_iter().map(|v| v / norm).collect()
                })
                .collect();
            let mut value = form.contract_except(&zs, usize::MAX)[0].norm();
            for _ in 0..opts.max_iter {
                let before = value;
                for j in 0..m {
                    let b = form.contract_except(&zs, j);
                    zs[j] = dual_maximizer(&b, ps[j]);
                }
                value = form.contract_except(&zs, usize::MAX)[0].norm();
                if value - before <= opts.tol * value.max(f64::MIN_POSITIVE) {
                    break;
                }
            }
            (value, s, zs.concat())
        })
        .reduce(
            || (f64::NEG_INFINITY, usize::MAX, Vec::new()),
            |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a },
        );
    SupEstimate::lower_only(lower, SupMethod::MultistartSearch, witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn c(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    fn cv(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|x| c(*x)).collect()
    }

    fn hadamard() -> MultilinearForm {
        MultilinearForm::bilinear_real(2, 2, &[1.0, 1.0, 1.0, -1.0]).unwrap()
    }

    #[test]
    fn eval_examples() {
        let id = MultilinearForm::bilinear_real(2, 2, &[1.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(eval_multilinear(&id, &[cv(&[1.0, 0.0]), cv(&[1.0, 0.0])]).unwrap(), c(1.0));
        let ones = MultilinearForm::bilinear_real(2, 2, &[1.0; 4]).unwrap();
        assert_eq!(eval_multilinear(&ones, &[cv(&[1.0, 1.0]), cv(&[1.0, -1.0])]).unwrap(), c(0.0));
        assert_eq!(eval_multilinear(&hadamard(), &[cv(&[1.0, 1.0]), cv(&[1.0, 0.0])]).unwrap(), c(2.0));
        assert!(eval_multilinear(&hadamard(), &[cv(&[1.0, 1.0])]).is_err());
        assert!(eval_multilinear(&hadamard(), &[cv(&[1.0]), cv(&[1.0, 1.0])]).is_err());
    }

    #[test]
    fn contraction_matches_naive_sum() {
        let mut rng = stream_rng(5, 0);
        let dims = vec![2, 3, 4];
        let coeffs: Vec<Complex64> = (0..24).map(|_| Complex64::new(rng.random(), rng.random())).collect();
        let form = MultilinearForm::new(dims.clone(), coeffs.clone()).unwrap();
        let zs: Vec<Vec<Complex64>> = dims
            .iter()
            .map(|n| (0..*n).map(|_| Complex64::new(rng.random(), rng.random())).collect())
            .collect();
        let mut naive = Complex64::new(0.0, 0.0);
        for a in 0..2 {
            for b in 0..3 {
                for d in 0..4 {
                    naive += coeffs[(a * 3 + b) * 4 + d] * zs[0][a] * zs[1][b] * zs[2][d];
                }
            }
        }
        assert!((eval_multilinear(&form, &zs).unwrap() - naive).norm() < 1e-12);
        // partial contraction leaves the skipped factor
        for skip in 0..3 {
            let b = form.contract_except(&zs, skip);
            let val: Complex64 = b.iter().zip(&zs[skip]).map(|(x, y)| x * y).sum();
            assert!((val - naive).norm() < 1e-12);
        }
    }

    #[test]
    fn spectral_examples() {
        let n = 5;
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        let form = MultilinearForm::bilinear_real(n, n, &id).unwrap();
        let est = sup_multilinear(&form, &[2.0, 2.0], SearchStrategy::Spectral).unwrap();
        assert!((est.lower - 1.0).abs() < 1e-12);
        let est = sup_multilinear(&hadamard(), &[2.0, 2.0], SearchStrategy::Spectral).unwrap();
        assert!((est.lower - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(est.upper, Some(est.lower));
        let (x, y) = est.witness.split_at(2);
        let v = eval_multilinear(&hadamard(), &[x.to_vec(), y.to_vec()]).unwrap();
        assert!((v.norm() - 2f64.sqrt()).abs() < 1e-12);
        assert!(sup_multilinear(&hadamard(), &[2.0, 3.0], SearchStrategy::Spectral).is_err());
    }

    #[test]
    fn vertex_example() {
        let est = sup_multilinear(&hadamard(), &[f64::INFINITY; 2], SearchStrategy::VertexExact).unwrap();
        assert_eq!(est.lower, 2.0);
        let (x, y) = est.witness.split_at(2);
        assert_eq!(eval_multilinear(&hadamard(), &[x.to_vec(), y.to_vec()]).unwrap().norm(), 2.0);
    }

    #[test]
    fn vertex_matches_brute_force() {
        let mut rng = stream_rng(8, 1);
        for trial in 0..20 {
            let dims = match trial % 3 {
                0 => vec![3, 4],
                1 => vec![2, 3, 2],
                _ => vec![6, 6],
            };
            let size: usize = dims.iter().product();
            let coeffs: Vec<Complex64> = (0..size).map(|_| c(rng.random::<f64>() * 2.0 - 1.0)).collect();
            let form = MultilinearForm::new(dims.clone(), coeffs).unwrap();
            let est = sup_multilinear(&form, &vec![f64::INFINITY; dims.len()], SearchStrategy::VertexExact).unwrap();
            let total: usize = dims.iter().sum();
            let mut oracle: f64 = 0.0;
            for mask in 0..(1u64 << total) {
                let mut bit = 0;
                let zs: Vec<Vec<Complex64>> = dims
                    .iter()
                    .map(|n| {
                        (0..*n)
                            .map(|_| {
                                let s = if mask >> bit & 1 == 1 { -1.0 } else { 1.0 };
                                bit += 1;
                                c(s)
                            })
                            .collect()
                    })
                    .collect();
                oracle = oracle.max(eval_multilinear(&form, &zs).unwrap().norm());
            }
            assert!((est.lower - oracle).abs() <= 1e-12 * (1.0 + oracle));
        }
    }

    #[test]
    fn vertex_errors() {
        let big = MultilinearForm::bilinear_real(13, 12, &vec![1.0; 156]).unwrap();
        assert!(matches!(
            sup_multilinear(&big, &[f64::INFINITY; 2], SearchStrategy::VertexExact),
            Err(Error::Budget(_))
        ));
        assert!(sup_multilinear(&hadamard(), &[f64::INFINITY, 2.0], SearchStrategy::VertexExact).is_err());
        assert!(sup_multilinear(&hadamard(), &[0.5, 2.0], SearchStrategy::MultistartSearch).is_err());
    }

    fn power_iteration(rows: usize, cols: usize, a: &[f64]) -> f64 {
        let mut v = vec![1.0; cols];
        let mut sigma = 0.0;
        for _ in 0..5000 {
            let u: Vec<f64> = (0..rows).map(|i| (0..cols).map(|j| a[i * cols + j] * v[j]).sum()).collect();
            let w: Vec<f64> = (0..cols).map(|j| (0..rows).map(|i| a[i * cols + j] * u[i]).sum()).collect();
            let nw = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            let next = nw.sqrt();
            v = w.iter().map(|x| x / nw).collect();
            if (next - sigma).abs() < 1e-15 * next {
                sigma = next;
                break;
            }
            sigma = next;
        }
        sigma
    }

    #[test]
    fn spectral_agrees_with_power_iteration_and_search() {
        let mut rng = stream_rng(12, 0);
        for n in [2usize, 7, 16, 40, 64] {
            let a: Vec<f64> = (0..n * n).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
            let form = MultilinearForm::bilinear_real(n, n, &a).unwrap();
            let spec = sup_multilinear(&form, &[2.0, 2.0], SearchStrategy::Spectral).unwrap().lower;
            let pi = power_iteration(n, n, &a);
            assert!((spec - pi).abs() <= 1e-6 * spec, "n={n}: {spec} vs {pi}");
            assert!((spec - spectral_norm_real(n, n, &a)).abs() <= 1e-12 * spec);
            let ms = sup_multilinear(&form, &[2.0, 2.0], SearchStrategy::MultistartSearch).unwrap().lower;
            assert!(ms <= spec * (1.0 + 1e-12));
            assert!((spec - ms) <= 1e-6 * spec, "n={n}: search {ms} vs {spec}");
        }
    }

    #[test]
    fn complex_spectral_witness() {
        let mut rng = stream_rng(4, 4);
        let coeffs: Vec<Complex64> = (0..12).map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
        let form = MultilinearForm::bilinear(3, 4, coeffs).unwrap();
        let est = sup_multilinear(&form, &[2.0, 2.0], SearchStrategy::Spectral).unwrap();
        let (x, y) = est.witness.split_at(3);
        let v = eval_multilinear(&form, &[x.to_vec(), y.to_vec()]).unwrap();
        assert!((v.norm() - est.lower).abs() < 1e-10);
        let ms = sup_multilinear(&form, &[2.0, 2.0], SearchStrategy::MultistartSearch).unwrap();
        assert!((ms.lower - est.lower).abs() < 1e-6);
    }
}
