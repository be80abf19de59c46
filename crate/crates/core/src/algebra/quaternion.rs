use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use super::kernel;
use crate::{Error, Result};

/// A real quaternion `c₀ + c₁e₁ + c₂e₂ + c₃e₃`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub c: [f64; 4],
}

impl Quaternion {
    pub const ZERO: Self = Self { c: [0.0; 4] };
    pub const ONE: Self = Self { c: [1.0, 0.0, 0.0, 0.0] };

    pub const fn new(c: [f64; 4]) -> Self {
        Self { c }
    }

    pub const fn real(r: f64) -> Self {
        Self { c: [r, 0.0, 0.0, 0.0] }
    }

    /// Basis element `e_i`, `i ∈ 0..4` (`e₀ = 1`).
    pub fn basis(i: usize) -> Self {
        assert!(i < 4, "quaternion basis index {i} out of range");
        let mut c = [0.0; 4];
        c[i] = 1.0;
        Self { c }
    }

    pub fn re(&self) -> f64 {
        self.c[0]
    }

    /// Vector part as a quaternion with zero real part.
    pub fn vector(&self) -> Self {
        Self::new([0.0, self.c[1], self.c[2], self.c[3]])
    }

    pub fn conj(&self) -> Self {
        Self::new(kernel::quat_conj(&self.c))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c.iter().map(|v| v * v).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.c.iter().zip(&other.c).map(|(a, b)| a * b).sum()
    }

    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::NotInvertible);
        }
        Ok(self.conj() * (1.0 / n2))
    }

    /// Left multiplication `L_q(a) = qa`.
    pub fn left_mul(&self, a: &Self) -> Self {
        *self * *a
    }

    /// Right multiplication `R_q(a) = aq`.
    pub fn right_mul(&self, a: &Self) -> Self {
        *a * *self
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl Index<usize> for Quaternion {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.c[i]
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(std::array::from_fn(|k| self.c[k] + rhs.c[k]))
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(std::array::from_fn(|k| self.c[k] - rhs.c[k]))
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.c.map(|v| -v))
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(kernel::quat_mul(&self.c, &rhs.c))
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.c.map(|v| v * rhs))
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::octonion::write_terms(f, &self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamilton_relations() {
        let (i, j, k) = (Quaternion::basis(1), Quaternion::basis(2), Quaternion::basis(3));
        let minus_one = Quaternion::real(-1.0);
        assert_eq!(i * i, minus_one);
        assert_eq!(j * j, minus_one);
        assert_eq!(k * k, minus_one);
        assert_eq!(i * j * k, minus_one);
        assert_eq!(i * j, k);
        assert_eq!(j * i, -k);
    }

    #[test]
    fn double_conjugation_and_inverse() {
        let a = Quaternion::new([0.3, -1.2, 0.7, 2.0]);
        assert_eq!(a.conj().conj(), a);
        let prod = a * a.inverse().unwrap();
        assert!((prod - Quaternion::ONE).max_abs() < 1e-15);
        assert_eq!(Quaternion::ZERO.inverse(), Err(Error::NotInvertible));
    }
}
