//! Octonion-valued fields on R⁸.
//!
//! An [`OctonionField`] is an immutable expression tree. The same tree is
//! evaluated on `f64` coordinates (point values) and on [`Jet2`] coordinates
//! (value, gradient and Hessian of every component), so the derivative data
//! always belongs to exactly the function that is evaluated at points.
//!
//! Real-valued nodes (`coordinate`, `exp`, `sin`, `cos`, `recip`, `component`)
//! live in the `e₀` slot. `exp`, `sin`, `cos` and `recip` act on the real part
//! of their operand.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::algebra::{kernel, Coeff, Involution, Octonion, Subalgebra};
use crate::jet::{Jet2, Scalar};
use crate::{Error, Result};

/// Magnitude below which [`OctonionField::recip`] reports a pole.
pub const SINGULAR_EPS: f64 = 1e-24;

#[derive(Debug)]
enum Node {
    Constant(Octonion),
    Coordinate(usize),
    Identity,
    Sum(OctonionField, OctonionField),
    Difference(OctonionField, OctonionField),
    Negate(OctonionField),
    Scale(f64, OctonionField),
    Product(OctonionField, OctonionField),
    Conjugate(OctonionField),
    Project(Subalgebra, OctonionField),
    Involution(Involution, OctonionField),
    Component(usize, OctonionField),
    Exp(OctonionField),
    Sin(OctonionField),
    Cos(OctonionField),
    Recip(OctonionField),
    Translate([f64; 8], OctonionField),
    Quadratic(Box<QuadraticCoefficients>),
}

/// Coefficients of `c + Σᵢ xᵢLᵢ + Σ_{i≤k} xᵢxₖQᵢₖ` with octonion coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticCoefficients {
    pub constant: Octonion,
    pub linear: [Octonion; 8],
    /// `(i, k, Qᵢₖ)` with `i ≤ k`.
    pub quadratic: Vec<(usize, usize, Octonion)>,
}

#[derive(Clone)]
pub struct OctonionField(Arc<Node>);

impl fmt::Debug for OctonionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Jets of the eight components of a field at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OctonionJet2 {
    pub components: [Jet2; 8],
}

impl OctonionJet2 {
    pub fn value(&self) -> Octonion {
        Octonion::new(self.components.map(|j| j.value))
    }

    /// `∂f/∂xᵢ`.
    pub fn partial(&self, i: usize) -> Octonion {
        Octonion::new(self.components.map(|j| j.grad[i]))
    }

    /// `∂²f/∂xᵢ∂xₖ`.
    pub fn second(&self, i: usize, k: usize) -> Octonion {
        Octonion::new(self.components.map(|j| j.hess[i][k]))
    }

    /// `Δf`, the Hessian trace of every component.
    pub fn laplacian(&self) -> Octonion {
        Octonion::new(self.components.map(|j| j.laplacian()))
    }
}

fn real<S: Coeff>(v: S) -> [S; 8] {
    let mut out = [S::zero(); 8];
    out[0] = v;
    out
}

fn scale_coeffs<S: Scalar>(s: S, c: &Octonion) -> [S; 8] {
    std::array::from_fn(|k| s * S::from_f64(c.c[k]))
}

fn add8<S: Coeff>(a: &[S; 8], b: &[S; 8]) -> [S; 8] {
    std::array::from_fn(|k| a[k] + b[k])
}

impl OctonionField {
    fn node(node: Node) -> Self {
        Self(Arc::new(node))
    }

    pub fn constant(value: impl Into<Octonion>) -> Self {
        Self::node(Node::Constant(value.into()))
    }

    /// The real-valued coordinate field `x ↦ xᵢ`.
    pub fn coordinate(i: usize) -> Self {
        assert!(i < 8, "coordinate index {i} out of range");
        Self::node(Node::Coordinate(i))
    }

    /// `x ↦ x`.
    pub fn identity() -> Self {
        Self::node(Node::Identity)
    }

    /// `x ↦ |x|²` as a real-valued field.
    pub fn norm_squared() -> Self {
        (0..8).map(|i| Self::coordinate(i) * Self::coordinate(i)).reduce(|a, b| a + b).expect("eight terms")
    }

    pub fn quadratic(coefficients: QuadraticCoefficients) -> Self {
        Self::node(Node::Quadratic(Box::new(coefficients)))
    }

    pub fn conj(&self) -> Self {
        Self::node(Node::Conjugate(self.clone()))
    }

    pub fn project(&self, target: Subalgebra) -> Self {
        Self::node(Node::Project(target, self.clone()))
    }

    pub fn involution(&self, kind: Involution) -> Self {
        Self::node(Node::Involution(kind, self.clone()))
    }

    /// The real-valued field `x ↦ f_j(x)`.
    pub fn component(&self, j: usize) -> Self {
        assert!(j < 8, "component index {j} out of range");
        Self::node(Node::Component(j, self.clone()))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::node(Node::Scale(s, self.clone()))
    }

    pub fn exp(&self) -> Self {
        Self::node(Node::Exp(self.clone()))
    }

    pub fn sin(&self) -> Self {
        Self::node(Node::Sin(self.clone()))
    }

    pub fn cos(&self) -> Self {
        Self::node(Node::Cos(self.clone()))
    }

    /// `1/f₀`; evaluating where `|f₀| < SINGULAR_EPS` is a domain error.
    pub fn recip(&self) -> Self {
        Self::node(Node::Recip(self.clone()))
    }

    /// `x ↦ f(x + offset)`.
    pub fn translate(&self, offset: [f64; 8]) -> Self {
        Self::node(Node::Translate(offset, self.clone()))
    }

    pub fn eval(&self, x: &[f64; 8]) -> Result<Octonion> {
        self.eval_with(x).map(Octonion::new)
    }

    pub fn eval_jet(&self, x: &[f64; 8]) -> Result<OctonionJet2> {
        let seeds = Jet2::seed(x);
        self.eval_with(&seeds).map(|components| OctonionJet2 { components })
    }

    /// Evaluate on any scalar type; `eval` and `eval_jet` are the `f64` and
    /// `Jet2` instances.
    pub fn eval_with<S: Scalar>(&self, x: &[S; 8]) -> Result<[S; 8]> {
        Ok(match &*self.0 {
            Node::Constant(c) => c.c.map(S::from_f64),
            Node::Coordinate(i) => real(x[*i]),
            Node::Identity => *x,
            Node::Sum(a, b) => add8(&a.eval_with(x)?, &b.eval_with(x)?),
            Node::Difference(a, b) => {
                let (a, b) = (a.eval_with(x)?, b.eval_with(x)?);
                std::array::from_fn(|k| a[k] - b[k])
            }
            Node::Negate(a) => a.eval_with(x)?.map(|v| -v),
            Node::Scale(s, a) => {
                let s = S::from_f64(*s);
                a.eval_with(x)?.map(|v| s * v)
            }
            Node::Product(a, b) => kernel::product(&a.eval_with(x)?, &b.eval_with(x)?),
            Node::Conjugate(a) => kernel::conj(&a.eval_with(x)?),
            Node::Project(t, a) => kernel::project(&a.eval_with(x)?, *t),
            Node::Involution(Involution::Star, a) => kernel::star(&a.eval_with(x)?),
            Node::Involution(Involution::Hat, a) => kernel::hat(&a.eval_with(x)?),
            Node::Component(j, a) => real(a.eval_with(x)?[*j]),
            Node::Exp(a) => real(a.eval_with(x)?[0].exp()),
            Node::Sin(a) => real(a.eval_with(x)?[0].sin()),
            Node::Cos(a) => real(a.eval_with(x)?[0].cos()),
            Node::Recip(a) => {
                let v = a.eval_with(x)?[0];
                if v.value().abs() < SINGULAR_EPS {
                    return Err(Error::Singular(format!(
                        "reciprocal of {:e} at x = {:?}",
                        v.value(),
                        x.map(|s| s.value())
                    )));
                }
                real(v.recip())
            }
            Node::Translate(offset, a) => {
                let shifted = std::array::from_fn(|k| x[k] + S::from_f64(offset[k]));
                a.eval_with(&shifted)?
            }
            Node::Quadratic(q) => {
                let mut acc = q.constant.c.map(S::from_f64);
                for (i, l) in q.linear.iter().enumerate() {
                    acc = add8(&acc, &scale_coeffs(x[i], l));
                }
                for (i, k, c) in &q.quadratic {
                    acc = add8(&acc, &scale_coeffs(x[*i] * x[*k], c));
                }
                acc
            }
        })
    }
}

impl Add for OctonionField {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::node(Node::Sum(self, rhs))
    }
}

impl Sub for OctonionField {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::node(Node::Difference(self, rhs))
    }
}

impl Neg for OctonionField {
    type Output = Self;
    fn neg(self) -> Self {
        Self::node(Node::Negate(self))
    }
}

/// Octonion product of fields, `(fg)(x) = f(x)g(x)`.
impl Mul for OctonionField {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::node(Node::Product(self, rhs))
    }
}

impl Mul<f64> for OctonionField {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: [f64; 8] = [0.3, -0.1, 0.4, 0.15, -0.9, 0.26, 0.5, -0.35];

    #[test]
    fn coordinate_field_jet() {
        let j = OctonionField::coordinate(3).eval_jet(&P).unwrap();
        assert_eq!(j.value(), Octonion::real(P[3]));
        assert_eq!(j.partial(3), Octonion::ONE);
        for i in (0..8).filter(|&i| i != 3) {
            assert_eq!(j.partial(i), Octonion::ZERO);
        }
        for i in 0..8 {
            for k in 0..8 {
                assert_eq!(j.second(i, k), Octonion::ZERO);
            }
        }
    }

    #[test]
    fn norm_squared_jet() {
        let j = OctonionField::norm_squared().eval_jet(&P).unwrap();
        for i in 0..8 {
            assert_eq!(j.partial(i), Octonion::real(2.0 * P[i]));
        }
        assert_eq!(j.laplacian(), Octonion::real(16.0));
    }

    #[test]
    fn jet_value_equals_point_value() {
        let x = OctonionField::identity();
        let f = (x.clone() * OctonionField::constant(Octonion::basis(5)) * x.clone()).conj()
            + x.component(2).exp() * OctonionField::constant(Octonion::basis(3))
            + x.project(Subalgebra::Quaternion).involution(Involution::Star)
            + (OctonionField::norm_squared() + OctonionField::constant(1.0)).recip();
        let v = f.eval(&P).unwrap();
        let j = f.eval_jet(&P).unwrap();
        assert!((j.value() - v).max_abs() <= 1e-14);
    }

    #[test]
    fn reciprocal_pole_is_a_domain_error() {
        let f = (OctonionField::coordinate(0) - OctonionField::constant(0.3)).recip();
        assert!(matches!(f.eval(&P), Err(Error::Singular(_))));
        assert!(matches!(f.eval_jet(&P), Err(Error::Singular(_))));
        assert!(f.eval(&[0.0; 8]).is_ok());
    }

    #[test]
    fn translation_shifts_the_argument() {
        let f = OctonionField::identity().translate([1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0]);
        let v = f.eval(&[0.0; 8]).unwrap();
        assert_eq!(v, Octonion::ONE + Octonion::basis(4) * 2.0);
    }

    #[test]
    fn quadratic_field_matches_tree() {
        let mut linear = [Octonion::ZERO; 8];
        linear[1] = Octonion::basis(2);
        let q = QuadraticCoefficients {
            constant: Octonion::basis(7),
            linear,
            quadratic: vec![(0, 4, Octonion::basis(1) * 3.0)],
        };
        let f = OctonionField::quadratic(q);
        let tree = OctonionField::constant(Octonion::basis(7))
            + OctonionField::coordinate(1) * OctonionField::constant(Octonion::basis(2))
            + OctonionField::coordinate(0)
                * OctonionField::coordinate(4)
                * OctonionField::constant(Octonion::basis(1) * 3.0);
        let (a, b) = (f.eval_jet(&P).unwrap(), tree.eval_jet(&P).unwrap());
        for i in 0..8 {
            assert!((a.partial(i) - b.partial(i)).max_abs() < 1e-15);
            for k in 0..8 {
                assert!((a.second(i, k) - b.second(i, k)).max_abs() < 1e-15);
            }
        }
    }
}
