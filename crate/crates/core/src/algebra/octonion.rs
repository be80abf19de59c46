use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{kernel, Quaternion};
use crate::{Error, Result};

/// The subalgebras `R = span{1}`, `C = span{1, e₄}` and `H = span{1, e₁, e₂, e₃}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subalgebra {
    Real,
    Complex,
    Quaternion,
}

/// The two involutions built from the quaternionic form `x = a + be₄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Involution {
    /// `x* = ā + b̄e₄`
    Star,
    /// `x̂ = a − be₄`
    Hat,
}

/// An octonion `c₀ + c₁e₁ + … + c₇e₇`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Octonion {
    pub c: [f64; 8],
}

impl Octonion {
    pub const ZERO: Self = Self { c: [0.0; 8] };
    pub const ONE: Self = Self { c: [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0] };

    pub const fn new(c: [f64; 8]) -> Self {
        Self { c }
    }

    pub const fn real(r: f64) -> Self {
        Self { c: [r, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0] }
    }

    /// Basis element `e_i` for `i ∈ 0..8`, with `e₀ = 1`.
    pub fn basis(i: usize) -> Self {
        assert!(i < 8, "octonion basis index {i} out of range");
        let mut c = [0.0; 8];
        c[i] = 1.0;
        Self { c }
    }

    /// `a + be₄` from its quaternionic form.
    pub fn from_quaternionic(a: Quaternion, b: Quaternion) -> Self {
        Self::new(kernel::join(&a.c, &b.c))
    }

    /// The pair `(a, b)` with `x = a + be₄`: `a = c₀ + c₁e₁ + c₂e₂ + c₃e₃`,
    /// `b = c₄ + c₅e₁ + c₆e₂ + c₇e₃`.
    pub fn quaternionic_form(&self) -> (Quaternion, Quaternion) {
        let (a, b) = kernel::split(&self.c);
        (Quaternion::new(a), Quaternion::new(b))
    }

    pub fn re(&self) -> f64 {
        self.c[0]
    }

    /// Vector part `c₁e₁ + … + c₇e₇`.
    pub fn vector(&self) -> Self {
        let mut v = *self;
        v.c[0] = 0.0;
        v
    }

    pub fn conj(&self) -> Self {
        Self::new(kernel::conj(&self.c))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c.iter().map(|v| v * v).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Euclidean inner product of the coefficient vectors.
    pub fn dot(&self, other: &Self) -> f64 {
        self.c.iter().zip(&other.c).map(|(a, b)| a * b).sum()
    }

    /// `x⁻¹ = x̄ / |x|²`.
    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::NotInvertible);
        }
        Ok(self.conj() / n2)
    }

    /// `x*` (see [`Involution::Star`]).
    pub fn star(&self) -> Self {
        Self::new(kernel::star(&self.c))
    }

    /// `x̂` (see [`Involution::Hat`]).
    pub fn hat(&self) -> Self {
        Self::new(kernel::hat(&self.c))
    }

    pub fn involution(&self, kind: Involution) -> Self {
        match kind {
            Involution::Star => self.star(),
            Involution::Hat => self.hat(),
        }
    }

    /// `RE`, `CO` or `QU`: the projections `(x + x̄)/2`, `(x + x*)/2` and
    /// `(x + x̂)/2`. Coefficients outside the target basis are exactly zero.
    pub fn project(&self, target: Subalgebra) -> Self {
        Self::new(kernel::project(&self.c, target))
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `|self − other| / max(|self|, |other|)`, zero when both vanish.
    pub fn relative_error(&self, other: &Self) -> f64 {
        let scale = self.norm().max(other.norm());
        if scale == 0.0 {
            0.0
        } else {
            (*self - *other).norm() / scale
        }
    }
}

impl From<f64> for Octonion {
    fn from(r: f64) -> Self {
        Self::real(r)
    }
}

impl From<[f64; 8]> for Octonion {
    fn from(c: [f64; 8]) -> Self {
        Self::new(c)
    }
}

impl Index<usize> for Octonion {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.c[i]
    }
}

impl IndexMut<usize> for Octonion {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.c[i]
    }
}

impl Add for Octonion {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(std::array::from_fn(|k| self.c[k] + rhs.c[k]))
    }
}

impl AddAssign for Octonion {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a += b;
        }
    }
}

impl Sub for Octonion {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(std::array::from_fn(|k| self.c[k] - rhs.c[k]))
    }
}

impl Neg for Octonion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.c.map(|v| -v))
    }
}

impl Mul for Octonion {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(kernel::product(&self.c, &rhs.c))
    }
}

impl Mul<f64> for Octonion {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.c.map(|v| v * rhs))
    }
}

impl Mul<Octonion> for f64 {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        rhs * self
    }
}

impl Div<f64> for Octonion {
    type Output = Self;
    fn div(self, rhs: f64) -> Self {
        Self::new(self.c.map(|v| v / rhs))
    }
}

impl Sum for Octonion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |acc, x| acc + x)
    }
}

pub(super) fn write_terms(f: &mut fmt::Formatter<'_>, c: &[f64]) -> fmt::Result {
    let mut first = true;
    for (i, &v) in c.iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        let unit = if i == 0 { String::new() } else { format!("e{i}") };
        let mag = v.abs();
        let body = match (i, mag == 1.0) {
            (0, _) => format!("{mag}"),
            (_, true) => unit,
            (_, false) => format!("{mag}{unit}"),
        };
        match (first, v < 0.0) {
            (true, true) => write!(f, "-{body}")?,
            (true, false) => write!(f, "{body}")?,
            (false, true) => write!(f, " - {body}")?,
            (false, false) => write!(f, " + {body}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> Octonion {
        Octonion::basis(i)
    }

    #[test]
    fn products_from_the_table() {
        assert_eq!(e(2) * e(3), e(1));
        assert_eq!(e(4) * e(4), -Octonion::ONE);
        assert_eq!(e(5) * e(6), -e(3));
        assert_eq!(e(4) * e(5), e(1));
    }

    #[test]
    fn non_associative_triple() {
        assert_eq!((e(1) * e(2)) * e(4), e(7));
        assert_eq!(e(1) * (e(2) * e(4)), -e(7));
    }

    #[test]
    fn worked_product_and_its_norm() {
        let x = Octonion::ONE + e(1);
        let y = e(2) + e(4);
        let xy = x * y;
        assert_eq!(xy, e(2) + e(3) + e(4) + e(5));
        assert_eq!(xy.norm(), 2.0);
        assert_eq!(x.norm() * y.norm(), 2.0_f64.sqrt() * 2.0_f64.sqrt());
        assert!((xy.norm() - x.norm() * y.norm()).abs() < 1e-15);
    }

    #[test]
    fn conjugation_and_norm() {
        assert_eq!(Octonion::ONE.conj(), Octonion::ONE);
        assert_eq!((Octonion::ONE + e(5) * 2.0).conj(), Octonion::ONE - e(5) * 2.0);
        assert_eq!(e(3).norm(), 1.0);
        assert_eq!(Octonion::new([1.0; 8]).norm(), 8.0_f64.sqrt());
        assert_eq!(Octonion::ZERO.norm(), 0.0);
    }

    #[test]
    fn inverses() {
        assert_eq!(e(1).inverse().unwrap(), -e(1));
        assert_eq!(Octonion::real(2.0).inverse().unwrap(), Octonion::real(0.5));
        assert_eq!(Octonion::ZERO.inverse(), Err(Error::NotInvertible));
        assert_eq!(Octonion::ZERO.inverse().unwrap_err().to_string(), "not invertible: octonion has zero norm");
    }

    #[test]
    fn projections() {
        let x = Octonion::ONE + e(1) * 2.0 + e(4) * 3.0 + e(5) * 4.0;
        assert_eq!(x.project(Subalgebra::Complex), Octonion::ONE + e(4) * 3.0);
        assert_eq!(x.project(Subalgebra::Real), Octonion::ONE);
        assert_eq!(x.project(Subalgebra::Quaternion), Octonion::ONE + e(1) * 2.0);
    }

    #[test]
    fn projections_are_the_averaged_involutions() {
        let x = Octonion::new([0.5, -1.0, 2.0, 0.25, -0.75, 1.5, -2.5, 3.0]);
        assert_eq!(x.project(Subalgebra::Real), (x + x.conj()) * 0.5);
        assert_eq!(x.project(Subalgebra::Complex), (x + x.star()) * 0.5);
        assert_eq!(x.project(Subalgebra::Quaternion), (x + x.hat()) * 0.5);
    }

    #[test]
    fn involutions() {
        assert_eq!(e(4).hat(), -e(4));
        assert_eq!(e(4).star(), e(4));
        assert_eq!(e(5).star(), -e(5));
        let x = Octonion::new([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        assert_eq!(x.star().star(), x);
        assert_eq!(x.hat().hat(), x);
    }

    #[test]
    fn quaternionic_form() {
        let (a, b) = e(5).quaternionic_form();
        assert_eq!(a, Quaternion::ZERO);
        assert_eq!(b, Quaternion::basis(1));
        let x = Octonion::new([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        let (a, b) = x.quaternionic_form();
        assert_eq!(Octonion::from_quaternionic(a, b), x);
        // conj(a + be₄) = ā − be₄
        assert_eq!(x.conj(), Octonion::from_quaternionic(a.conj(), -b));
        // |a + be₄|² = |a|² + |b|²
        assert_eq!(x.norm_sqr(), a.norm_sqr() + b.norm_sqr());
    }

    #[test]
    fn display() {
        let x = Octonion::ONE - e(5) * 2.0 + e(7);
        assert_eq!(x.to_string(), "1 - 2e5 + e7");
        assert_eq!(Octonion::ZERO.to_string(), "0");
        assert_eq!((-e(4)).to_string(), "-e4");
    }
}
