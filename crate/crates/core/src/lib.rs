//! Numerical laboratory for subgaussian Kahane–Salem–Zygmund (KSZ) inequalities.
//!
//! The crate is organised bottom-up:
//!
//! * [`subgaussian`] draws seeded Rademacher, Steinhaus and Gaussian families and
//!   evaluates their tail and sum bounds.
//! * [`norms`] holds every scalar norm used on either side of a KSZ inequality:
//!   weak-ℓ_q, Marcinkiewicz, the `S_{r'}` selector, the harmonic-measure norm,
//!   empirical exponential Orlicz norms and Orlicz sequence norms.
//! * [`polys`] represents sparse trigonometric/monomial polynomials and dense
//!   multilinear forms, estimates their sup norms and evaluates the
//!   constant-free right-hand-side growth factors.
//! * [`dirichlet`] covers prime statistics, the Bohr lift and Kronecker-flow sups
//!   of finitely supported Dirichlet polynomials.
//! * [`interp`] computes exact K-functionals for `(ℓ₁, ℓ₂)` and
//!   `(ℓ∞, ℓ∞(2^{-k}))`, K-method norms and Calderón–Lozanovskii norms.
//! * [`harness`] runs seeded Monte Carlo experiments and emits JSON/CSV reports.

// `!(x >= 0.0)` is the NaN-rejecting form used throughout for argument checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dirichlet;
pub mod error;
pub mod harness;
pub mod interp;
pub mod norms;
pub mod polys;
pub mod subgaussian;

pub use error::{Error, Result};
pub use num_complex::Complex64;
