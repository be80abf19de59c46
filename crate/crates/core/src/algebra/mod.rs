//! Octonion, quaternion and complex arithmetic.
//!
//! Octonions are stored as eight contiguous reals over the basis
//! `{1, e₁, …, e₇}`. The product is the Cayley–Dickson product on quaternion
//! pairs, evaluated in quaternionic form: with `x = a₁ + b₁e₄` and
//! `y = a₂ + b₂e₄`,
//!
//! ```text
//! xy = (a₁a₂ − b̄₂b₁) + (b₁ā₂ + b₂a₁)e₄
//! ```
//!
//! The multiplication table in [`table`] is derived from this product, never
//! the other way round.

mod complex;
mod octonion;
mod quaternion;
pub mod table;

pub use complex::Complex;
pub use octonion::{Involution, Octonion, Subalgebra};
pub use quaternion::Quaternion;
pub use table::{structure_table, BasisProduct, StructureTable};

use std::ops::{Add, Mul, Neg, Sub};

/// Coefficient ring for the generic product kernels.
///
/// Implemented by `f64` and by [`crate::jet::Jet`], so the same Cayley–Dickson
/// code multiplies plain octonions and octonion-valued jets.
pub trait Coeff: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {
    fn zero() -> Self;
    fn from_f64(v: f64) -> Self;
}

impl Coeff for f64 {
    #[inline]
    fn zero() -> Self {
        0.0
    }
    #[inline]
    fn from_f64(v: f64) -> Self {
        v
    }
}

/// Coefficient-generic kernels shared by [`Octonion`] and the field evaluator.
pub(crate) mod kernel {
    use super::{Coeff, Subalgebra};

    #[inline]
    pub fn quat_mul<S: Coeff>(a: &[S; 4], b: &[S; 4]) -> [S; 4] {
        [
            a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
            a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
        ]
    }

    #[inline]
    pub fn quat_conj<S: Coeff>(a: &[S; 4]) -> [S; 4] {
        [a[0], -a[1], -a[2], -a[3]]
    }

    #[inline]
    pub fn split<S: Coeff>(x: &[S; 8]) -> ([S; 4], [S; 4]) {
        ([x[0], x[1], x[2], x[3]], [x[4], x[5], x[6], x[7]])
    }

    #[inline]
    pub fn join<S: Coeff>(a: &[S; 4], b: &[S; 4]) -> [S; 8] {
        [a[0], a[1], a[2], a[3], b[0], b[1], b[2], b[3]]
    }

    /// `(a₁ + b₁e₄)(a₂ + b₂e₄) = (a₁a₂ − b̄₂b₁) + (b₁ā₂ + b₂a₁)e₄`.
    pub fn product<S: Coeff>(x: &[S; 8], y: &[S; 8]) -> [S; 8] {
        let (a1, b1) = split(x);
        let (a2, b2) = split(y);
        let p = quat_mul(&a1, &a2);
        let q = quat_mul(&quat_conj(&b2), &b1);
        let r = quat_mul(&b1, &quat_conj(&a2));
        let s = quat_mul(&b2, &a1);
        let mut out = [S::zero(); 8];
        for k in 0..4 {
            out[k] = p[k] - q[k];
            out[k + 4] = r[k] + s[k];
        }
        out
    }

    pub fn conj<S: Coeff>(x: &[S; 8]) -> [S; 8] {
        let mut out = x.map(|v| -v);
        out[0] = x[0];
        out
    }

    /// `(a + be₄)* = ā + b̄e₄`.
    pub fn star<S: Coeff>(x: &[S; 8]) -> [S; 8] {
        let (a, b) = split(x);
        join(&quat_conj(&a), &quat_conj(&b))
    }

    /// `(a + be₄)^ = a − be₄`.
    pub fn hat<S: Coeff>(x: &[S; 8]) -> [S; 8] {
        let mut out = *x;
        for v in &mut out[4..] {
            *v = -*v;
        }
        out
    }

    pub fn project<S: Coeff>(x: &[S; 8], target: Subalgebra) -> [S; 8] {
        let mut out = [S::zero(); 8];
        match target {
            Subalgebra::Real => out[0] = x[0],
            Subalgebra::Complex => {
                out[0] = x[0];
                out[4] = x[4];
            }
            Subalgebra::Quaternion => out[..4].copy_from_slice(&x[..4]),
        }
        out
    }
}
