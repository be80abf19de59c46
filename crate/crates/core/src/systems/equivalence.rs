//! Point-by-point comparison of the systems with `|∂ₓf|`.

use rayon::prelude::*;
use serde::Serialize;

use super::complex::complex_system_from_jet;
use super::quaternionic::{quaternionic_system_residual, QuaternionicSplit};
use super::real::real_system_from_jet;
use crate::algebra::Octonion;
use crate::field::OctonionField;
use crate::operators::Side;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointEquivalence {
    pub point: [f64; 8],
    /// `|∂ₓf|`.
    pub operator_norm: f64,
    pub real: f64,
    pub complex: f64,
    pub quaternionic: f64,
    /// All four vanish, or none does.
    pub agree: bool,
    /// Largest deviation of a re-packed system residual from the matching
    /// component of `∂ₓf`.
    pub repacking_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub threshold: f64,
    pub points: Vec<PointEquivalence>,
    pub disagreements: usize,
    pub max_repacking_error: f64,
}

/// Evaluate every system at every point; results keep the order of `points`.
pub fn equivalence_report(f: &OctonionField, points: &[[f64; 8]], threshold: f64) -> Result<EquivalenceReport> {
    let split = QuaternionicSplit::from_field(f);
    let rows = points.par_iter().map(|x| evaluate_point(f, &split, x, threshold)).collect::<Result<Vec<_>>>()?;
    let disagreements = rows.iter().filter(|r| !r.agree).count();
    let max_repacking_error = rows.iter().map(|r| r.repacking_error).fold(0.0, f64::max);
    Ok(EquivalenceReport { threshold, points: rows, disagreements, max_repacking_error })
}

fn evaluate_point(
    f: &OctonionField,
    split: &QuaternionicSplit,
    x: &[f64; 8],
    threshold: f64,
) -> Result<PointEquivalence> {
    let jet = f.eval_jet(x)?;
    let direct = jet.cauchy_riemann_left();
    let real = real_system_from_jet(&jet);
    let complex = complex_system_from_jet(&jet)?;
    let quaternionic = quaternionic_system_residual(split, x, Side::Left)?;

    let mut repacking_error: f64 = 0.0;
    if let Some(r) = real.reals() {
        repacking_error = repacking_error.max((Octonion::new(r.try_into().expect("8 equations")) - direct).max_abs());
    }
    if let Some(z) = complex.complexes() {
        let mut c = [0.0; 8];
        for (k, v) in z.iter().enumerate() {
            c[2 * k] = v.re;
            c[2 * k + 1] = v.im;
        }
        repacking_error = repacking_error.max((Octonion::new(c) - direct).max_abs());
    }
    if let Some(q) = quaternionic.quaternions() {
        repacking_error = repacking_error.max((Octonion::from_quaternionic(q[0], q[1]) - direct).max_abs());
    }

    let operator_norm = direct.norm();
    let vanishing = [operator_norm, real.max_norm, complex.max_norm, quaternionic.max_norm].map(|v| v <= threshold);
    let agree = vanishing.iter().all(|v| *v) || vanishing.iter().all(|v| !*v);
    Ok(PointEquivalence {
        point: *x,
        operator_norm,
        real: real.max_norm,
        complex: complex.max_norm,
        quaternionic: quaternionic.max_norm,
        agree,
        repacking_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_field_concentrates_in_the_real_slot() {
        let pts = [[0.1, 0.2, -0.3, 0.4, 0.5, -0.6, 0.7, 0.05], [0.0; 8]];
        let report = equivalence_report(&OctonionField::identity(), &pts, 1e-9).unwrap();
        assert_eq!(report.disagreements, 0);
        for p in &report.points {
            assert_eq!(p.operator_norm, 6.0);
            assert_eq!(p.real, 6.0);
            assert_eq!(p.complex, 6.0);
            assert_eq!(p.quaternionic, 6.0);
        }
        assert!(report.max_repacking_error <= 1e-12);
    }

    #[test]
    fn fueter_fields_vanish_everywhere() {
        let f =
            OctonionField::coordinate(3) - OctonionField::coordinate(0) * OctonionField::constant(Octonion::basis(3));
        let pts: Vec<[f64; 8]> = (0..10).map(|k| [k as f64 * 0.1; 8]).collect();
        let report = equivalence_report(&f, &pts, 1e-9).unwrap();
        assert_eq!(report.disagreements, 0);
        assert!(report.points.iter().all(|p| p.operator_norm <= 1e-12 && p.quaternionic <= 1e-12));
        assert_eq!(report.points[3].point, [0.30000000000000004; 8]);
    }
}
