//! Second-order forward-mode jets.
//!
//! A [`Jet<N>`] carries the value, the gradient and the Hessian of a scalar
//! function of `N` variables. Arithmetic and the elementary functions
//! propagate all three by the product and chain rules. Only the upper
//! triangle of each Hessian is computed; the lower triangle is mirrored, so
//! `hess[i][j] == hess[j][i]` holds bit-for-bit.

use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::Coeff;

/// Scalars the field evaluator can run on: plain `f64` or a jet.
pub trait Scalar: Coeff + Send + Sync {
    /// The point value (for jets, the zeroth-order part).
    fn value(&self) -> f64;
    fn exp(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    /// `1/self`; the caller guarantees `value() != 0`.
    fn recip(self) -> Self;
}

impl Scalar for f64 {
    #[inline]
    fn value(&self) -> f64 {
        *self
    }
    #[inline]
    fn exp(self) -> Self {
        f64::exp(self)
    }
    #[inline]
    fn sin(self) -> Self {
        f64::sin(self)
    }
    #[inline]
    fn cos(self) -> Self {
        f64::cos(self)
    }
    #[inline]
    fn recip(self) -> Self {
        1.0 / self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<const N: usize> {
    pub value: f64,
    pub grad: [f64; N],
    pub hess: [[f64; N]; N],
}

/// A jet over the eight coordinates of R⁸ ≅ O.
pub type Jet2 = Jet<8>;

impl<const N: usize> Jet<N> {
    pub fn constant(value: f64) -> Self {
        Self { value, grad: [0.0; N], hess: [[0.0; N]; N] }
    }

    /// The coordinate function `x_i` evaluated at `value`.
    pub fn variable(value: f64, i: usize) -> Self {
        let mut j = Self::constant(value);
        j.grad[i] = 1.0;
        j
    }

    /// Coordinate jets for every component of a point.
    pub fn seed(point: &[f64; N]) -> [Self; N] {
        std::array::from_fn(|i| Self::variable(point[i], i))
    }

    /// Trace of the Hessian.
    pub fn laplacian(&self) -> f64 {
        (0..N).map(|i| self.hess[i][i]).sum()
    }

    /// `φ∘self` given `φ(v), φ'(v), φ''(v)` at `v = self.value`.
    fn chain(&self, f0: f64, f1: f64, f2: f64) -> Self {
        let mut out = Self::constant(f0);
        for i in 0..N {
            out.grad[i] = f1 * self.grad[i];
        }
        for i in 0..N {
            for j in i..N {
                let h = f1 * self.hess[i][j] + f2 * self.grad[i] * self.grad[j];
                out.hess[i][j] = h;
                out.hess[j][i] = h;
            }
        }
        out
    }

    fn zip(self, rhs: Self, op: impl Fn(f64, f64) -> f64) -> Self {
        let mut out = self;
        out.value = op(self.value, rhs.value);
        for i in 0..N {
            out.grad[i] = op(self.grad[i], rhs.grad[i]);
            for j in 0..N {
                out.hess[i][j] = op(self.hess[i][j], rhs.hess[i][j]);
            }
        }
        out
    }
}

impl<const N: usize> Add for Jet<N> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        self.zip(rhs, |a, b| a + b)
    }
}

impl<const N: usize> Sub for Jet<N> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self.zip(rhs, |a, b| a - b)
    }
}

impl<const N: usize> Neg for Jet<N> {
    type Output = Self;
    fn neg(self) -> Self {
        let mut out = self;
        out.value = -out.value;
        out.grad = out.grad.map(|v| -v);
        out.hess = out.hess.map(|row| row.map(|v| -v));
        out
    }
}

impl<const N: usize> Mul for Jet<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self, &rhs);
        let mut out = Self::constant(a.value * b.value);
        for i in 0..N {
            out.grad[i] = a.value * b.grad[i] + b.value * a.grad[i];
        }
        for i in 0..N {
            for j in i..N {
                let h =
                    a.value * b.hess[i][j] + b.value * a.hess[i][j] + (a.grad[i] * b.grad[j] + a.grad[j] * b.grad[i]);
                out.hess[i][j] = h;
                out.hess[j][i] = h;
            }
        }
        out
    }
}

impl<const N: usize> Mul<f64> for Jet<N> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        let mut out = self;
        out.value *= rhs;
        out.grad = out.grad.map(|v| v * rhs);
        out.hess = out.hess.map(|row| row.map(|v| v * rhs));
        out
    }
}

impl<const N: usize> Coeff for Jet<N> {
    fn zero() -> Self {
        Self::constant(0.0)
    }
    fn from_f64(v: f64) -> Self {
        Self::constant(v)
    }
}

impl<const N: usize> Scalar for Jet<N> {
    fn value(&self) -> f64 {
        self.value
    }
    fn exp(self) -> Self {
        let e = self.value.exp();
        self.chain(e, e, e)
    }
    fn sin(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(s, c, -s)
    }
    fn cos(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(c, -s, -c)
    }
    fn recip(self) -> Self {
        let r = 1.0 / self.value;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }
}
