//! Equivalent reformulations of `∂ₓf = 0` as residual evaluators.
//!
//! - [`real`]: the 8×8 real system (one equation per octonion component) and
//!   the Riesz system it should not be confused with;
//! - [`complex`]: the 4×4 complex system for `x = z₁ + z₂e₂ + (z₃ + z₄e₂)e₄`;
//! - [`quaternionic`]: the left and right quaternionic systems for
//!   `f = g + he₄`, and the quaternionic decomposition of `∂ₓf∂ₓ`;
//! - [`equivalence`]: per-point comparison of all of them with `|∂ₓf|`.
//!
//! The real and complex systems are generated from the structure constants.
//! Transcriptions of the published displays are checked in as fixtures and
//! diffed against the generated systems; the generated ones are used for
//! evaluation.

pub mod complex;
pub mod equivalence;
pub mod quaternionic;
pub mod real;

use serde::Serialize;

use crate::algebra::{Complex, Quaternion};

pub use complex::{complex_system_residual, ComplexSystem, ComplexTerm};
pub use equivalence::{equivalence_report, EquivalenceReport, PointEquivalence};
pub use quaternionic::{inframonogenic_decomposition_residual, quaternionic_system_residual, QuaternionicSplit};
pub use real::{real_system_residual, riesz_system_residual, RealSystem, RealTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemId {
    Real,
    Riesz,
    Complex,
    QuaternionicLeft,
    QuaternionicRight,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ResidualComponents {
    Real(Vec<f64>),
    Complex(Vec<Complex>),
    Quaternion(Vec<Quaternion>),
}

/// Left-hand sides of a system at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemResidual {
    pub system: SystemId,
    pub components: ResidualComponents,
    /// Largest component norm.
    pub max_norm: f64,
}

impl SystemResidual {
    pub fn new(system: SystemId, components: ResidualComponents) -> Self {
        let max_norm = match &components {
            ResidualComponents::Real(v) => v.iter().map(|x| x.abs()).fold(0.0, f64::max),
            ResidualComponents::Complex(v) => v.iter().map(Complex::norm).fold(0.0, f64::max),
            ResidualComponents::Quaternion(v) => v.iter().map(Quaternion::norm).fold(0.0, f64::max),
        };
        Self { system, components, max_norm }
    }

    pub fn reals(&self) -> Option<&[f64]> {
        match &self.components {
            ResidualComponents::Real(v) => Some(v),
            _ => None,
        }
    }

    pub fn complexes(&self) -> Option<&[Complex]> {
        match &self.components {
            ResidualComponents::Complex(v) => Some(v),
            _ => None,
        }
    }

    pub fn quaternions(&self) -> Option<&[Quaternion]> {
        match &self.components {
            ResidualComponents::Quaternion(v) => Some(v),
            _ => None,
        }
    }
}

/// One term where a generated system and its transcription disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemMismatch {
    pub equation: usize,
    pub term: String,
    /// Sign in the generated system, `0` when the term is absent.
    pub generated: i8,
    /// Sign in the transcription, `0` when the term is absent.
    pub transcribed: i8,
}

/// Compare two systems given as per-equation `(term label, sign)` lists.
fn diff_signed_terms(generated: &[Vec<(String, i8)>], transcribed: &[Vec<(String, i8)>]) -> Vec<SystemMismatch> {
    use std::collections::BTreeMap;
    let mut out = Vec::new();
    let n = generated.len().max(transcribed.len());
    for eq in 0..n {
        let mut merged: BTreeMap<&str, (i8, i8)> = BTreeMap::new();
        for (label, s) in generated.get(eq).into_iter().flatten() {
            merged.entry(label).or_default().0 += s;
        }
        for (label, s) in transcribed.get(eq).into_iter().flatten() {
            merged.entry(label).or_default().1 += s;
        }
        for (label, (g, t)) in merged {
            if g != t {
                out.push(SystemMismatch { equation: eq, term: label.to_string(), generated: g, transcribed: t });
            }
        }
    }
    out
}
