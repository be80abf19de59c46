use std::ops::{Add, Mul, Neg, Sub};

use super::Octonion;

/// A complex number `re + im·ι`.
///
/// Inside the octonions the imaginary unit is `e₄` (the subalgebra `CO`
/// projects onto). The complex decomposition of the Cauchy–Riemann system uses
/// the same type with `ι = e₁`; the embedding is chosen by the caller.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn norm(&self) -> f64 {
        self.re.hypot(self.im)
    }

    /// Embedding `re + im·e₄`.
    pub fn to_octonion(&self) -> Octonion {
        let mut c = [0.0; 8];
        c[0] = self.re;
        c[4] = self.im;
        Octonion::new(c)
    }
}

impl Add for Complex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for Complex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for Complex {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Mul for Complex {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.re * rhs.re - self.im * rhs.im, self.re * rhs.im + self.im * rhs.re)
    }
}

impl Mul<f64> for Complex {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.re * rhs, self.im * rhs)
    }
}
