//! Sequence-space and Orlicz norms.
//!
//! Everything here is a pure function of its inputs. Sequence norms are
//! rearrangement invariant: they only look at the decreasing rearrangement
//! `x*` of the moduli `|x_k|`.

mod orlicz;
mod sequence;

pub use orlicz::{
    luxemburg_bisect, orlicz_empirical_norm, orlicz_seq_norm, pmoment_orlicz_estimate,
    EmpiricalSample, OrliczExponent,
};
pub use sequence::{
    decreasing_rearrangement, harmonic_number, l_hn_norm, lp_norm, marcinkiewicz_norm, s_norm,
    sup_norm, weak_norm, WeightSequence,
};

use num_complex::Complex64;
use std::ops::Deref;

use crate::error::{invalid, Result};

/// A finite sequence of complex scalars with all entries finite.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SequenceVector(Vec<Complex64>);

impl SequenceVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return invalid(format!("sequence entry {bad} is not finite"));
        }
        Ok(SequenceVector(entries))
    }

    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }
}

impl Deref for SequenceVector {
    type Target = [Complex64];

    fn deref(&self) -> &[Complex64] {
        &self.0
    }
}

/// Embeds a real slice into complex scalars.
pub fn to_complex(values: &[f64]) -> Vec<Complex64> {
    values.iter().map(|&v| Complex64::new(v, 0.0)).collect()
}
