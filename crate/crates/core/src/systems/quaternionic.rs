//! Quaternionic Cauchy–Riemann systems for `f = g + he₄` over `x = u + ve₄`.
//!
//! `∂_u = ∂_{x₀} + e₁∂_{x₁} + e₂∂_{x₂} + e₃∂_{x₃}` and `∂_v` is the same
//! operator over `x₄..x₇`. Written on the left an operator multiplies the
//! basis from the left (`∂_u g = Σ eᵢ∂ᵢg`), written on the right from the
//! right (`g∂_u = Σ ∂ᵢg eᵢ`). A bar on the operator conjugates its symbol.

use super::{ResidualComponents, SystemId, SystemResidual};
use crate::algebra::{Octonion, Quaternion, Subalgebra};
use crate::field::{OctonionField, OctonionJet2};
use crate::operators::Side;
use crate::{Error, Result};

/// A pair of quaternion-valued fields `(g, h)` of `x = u + ve₄`.
#[derive(Clone, Debug)]
pub struct QuaternionicSplit {
    pub g: OctonionField,
    pub h: OctonionField,
}

impl QuaternionicSplit {
    /// `g` and `h` must take values in `span{1, e₁, e₂, e₃}`; evaluation
    /// fails otherwise.
    pub fn new(g: OctonionField, h: OctonionField) -> Self {
        Self { g, h }
    }

    /// `g = QU(f)` and `h = QU(−fe₄)`.
    pub fn from_field(f: &OctonionField) -> Self {
        let g = f.project(Subalgebra::Quaternion);
        let h = (f.clone() * OctonionField::constant(-Octonion::basis(4))).project(Subalgebra::Quaternion);
        Self { g, h }
    }

    /// `g + he₄`.
    pub fn reassemble(&self) -> OctonionField {
        self.g.clone() + self.h.clone() * OctonionField::constant(Octonion::basis(4))
    }

    fn jets(&self, x: &[f64; 8]) -> Result<(QJet, QJet)> {
        Ok((QJet::from_octonion(&self.g.eval_jet(x)?, "g")?, QJet::from_octonion(&self.h.eval_jet(x)?, "h")?))
    }
}

/// Value, gradient and Hessian of a quaternion-valued field.
#[derive(Clone, Copy, Debug)]
struct QJet {
    grad: [Quaternion; 8],
    hess: [[Quaternion; 8]; 8],
}

impl QJet {
    fn from_octonion(jet: &OctonionJet2, name: &str) -> Result<Self> {
        let value = jet.value();
        let outside = value.c[4..].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if outside > 1e-12 * value.norm().max(1.0) {
            return Err(Error::Precondition(format!("{name} is not quaternion-valued (e₄ part {outside:e})")));
        }
        let q = |o: Octonion| Quaternion::new([o.c[0], o.c[1], o.c[2], o.c[3]]);
        let mut grad = [Quaternion::ZERO; 8];
        let mut hess = [[Quaternion::ZERO; 8]; 8];
        for i in 0..8 {
            grad[i] = q(jet.partial(i));
            for k in 0..8 {
                hess[i][k] = q(jet.second(i, k));
            }
        }
        Ok(Self { grad, hess })
    }

    fn conj(&self) -> Self {
        let mut out = *self;
        for i in 0..8 {
            out.grad[i] = self.grad[i].conj();
            for k in 0..8 {
                out.hess[i][k] = self.hess[i][k].conj();
            }
        }
        out
    }

    /// `Σᵢ ∂²f/∂yᵢ²` over the block.
    fn block_laplacian(&self, block: Block) -> Quaternion {
        (0..4).map(|i| self.hess[block.start() + i][block.start() + i]).fold(Quaternion::ZERO, |a, b| a + b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Block {
    U,
    V,
}

impl Block {
    fn start(self) -> usize {
        match self {
            Block::U => 0,
            Block::V => 4,
        }
    }
}

/// One quaternionic Cauchy–Riemann operator.
#[derive(Clone, Copy, Debug)]
struct Op {
    side: Side,
    block: Block,
    bar: bool,
}

const fn op(side: Side, block: Block, bar: bool) -> Op {
    Op { side, block, bar }
}

impl Op {
    fn symbol(self, i: usize) -> Quaternion {
        let e = Quaternion::basis(i);
        if self.bar && i > 0 {
            -e
        } else {
            e
        }
    }

    fn multiply(self, i: usize, q: Quaternion) -> Quaternion {
        match self.side {
            Side::Left => self.symbol(i) * q,
            Side::Right => q * self.symbol(i),
        }
    }

    fn first(self, f: &QJet) -> Quaternion {
        (0..4).map(|i| self.multiply(i, f.grad[self.block.start() + i])).fold(Quaternion::ZERO, |a, b| a + b)
    }

    /// `outer` applied to the result of `self`.
    fn then(self, outer: Op, f: &QJet) -> Quaternion {
        let mut acc = Quaternion::ZERO;
        for i in 0..4 {
            for k in 0..4 {
                let d = f.hess[self.block.start() + i][outer.block.start() + k];
                acc += outer.multiply(k, self.multiply(i, d));
            }
        }
        acc
    }
}

use Side::{Left, Right};

/// Left: `(∂_u g − h̄∂_v, h∂_u + ∂_v ḡ)`, the quaternionic form of `∂ₓf`.
/// Right: `(g∂_u − ∂_v̄ h, h∂_ū + ∂_v g)`, the quaternionic form of `f∂ₓ`.
pub fn quaternionic_system_residual(split: &QuaternionicSplit, x: &[f64; 8], side: Side) -> Result<SystemResidual> {
    let (g, h) = split.jets(x)?;
    let (q1, q2, id) = match side {
        Left => (
            op(Left, Block::U, false).first(&g) - op(Right, Block::V, false).first(&h.conj()),
            op(Right, Block::U, false).first(&h) + op(Left, Block::V, false).first(&g.conj()),
            SystemId::QuaternionicLeft,
        ),
        Right => (
            op(Right, Block::U, false).first(&g) - op(Left, Block::V, true).first(&h),
            op(Right, Block::U, true).first(&h) + op(Left, Block::V, false).first(&g),
            SystemId::QuaternionicRight,
        ),
    };
    Ok(SystemResidual::new(id, ResidualComponents::Quaternion(vec![q1, q2])))
}

/// The two second-order left-hand sides
///
/// ```text
/// E₁ = Δ_v ḡ − ∂_u g ∂_u + h̄∂_v∂_u + ∂_v̄ h ∂_u
/// E₂ = Δ_u h + ∂_v ḡ ∂_ū + ∂_v∂_u g − ∂_v h̄ ∂_v
/// ```
///
/// with `∂ₓf∂ₓ = −E₁ + E₂e₄`.
pub fn inframonogenic_decomposition_residual(
    split: &QuaternionicSplit,
    x: &[f64; 8],
) -> Result<(Quaternion, Quaternion)> {
    let (g, h) = split.jets(x)?;
    let (gb, hb) = (g.conj(), h.conj());
    let e1 = gb.block_laplacian(Block::V) - op(Left, Block::U, false).then(op(Right, Block::U, false), &g)
        + op(Right, Block::V, false).then(op(Right, Block::U, false), &hb)
        + op(Left, Block::V, true).then(op(Right, Block::U, false), &h);
    let e2 = h.block_laplacian(Block::U)
        + op(Left, Block::V, false).then(op(Right, Block::U, true), &gb)
        + op(Left, Block::U, false).then(op(Left, Block::V, false), &g)
        - op(Left, Block::V, false).then(op(Right, Block::V, false), &hb);
    Ok((e1, e2))
}

/// `(Δg, Δh)` over all eight coordinates.
pub fn split_laplacians(split: &QuaternionicSplit, x: &[f64; 8]) -> Result<(Quaternion, Quaternion)> {
    let (g, h) = split.jets(x)?;
    Ok((
        g.block_laplacian(Block::U) + g.block_laplacian(Block::V),
        h.block_laplacian(Block::U) + h.block_laplacian(Block::V),
    ))
}

/// For real-valued `g₀`, `h₀`: `(∂_u g₀ − ∂_v h₀, ∂_u h₀ + ∂_v g₀)`, each a
/// full quaternion.
pub fn real_pair_residual(g0: &OctonionField, h0: &OctonionField, x: &[f64; 8]) -> Result<(Quaternion, Quaternion)> {
    let real = |f: &OctonionField| f.project(Subalgebra::Real);
    let (g, h) = QuaternionicSplit::new(real(g0), real(h0)).jets(x)?;
    let du = op(Left, Block::U, false);
    let dv = op(Left, Block::V, false);
    Ok((du.first(&g) - dv.first(&h), du.first(&h) + dv.first(&g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{cauchy_riemann_left, cauchy_riemann_right, inframonogenic_residual};

    const P: [f64; 8] = [0.2, -0.3, 0.1, 0.45, -0.12, 0.33, -0.27, 0.05];

    fn sample_field() -> OctonionField {
        let x = OctonionField::identity();
        (x.clone() * OctonionField::constant(Octonion::basis(6)))
            * (x.clone() * OctonionField::constant(Octonion::basis(3)))
            + x.component(2).exp() * OctonionField::constant(Octonion::basis(5))
            + x.component(7).sin() * OctonionField::constant(Octonion::new([0.3, -1.0, 0.0, 2.0, 0.5, 0.0, 1.0, -0.7]))
    }

    #[test]
    fn split_reassembles() {
        let f = sample_field();
        let split = QuaternionicSplit::from_field(&f);
        let back = split.reassemble();
        for t in [P, [0.0; 8], [1.0, -1.0, 0.5, 0.2, 0.3, -0.4, 0.9, 0.1]] {
            assert!((back.eval(&t).unwrap() - f.eval(&t).unwrap()).max_abs() <= 1e-14);
        }
    }

    #[test]
    fn left_residual_is_the_quaternionic_form_of_the_operator() {
        let f = sample_field();
        let split = QuaternionicSplit::from_field(&f);
        let q = quaternionic_system_residual(&split, &P, Left).unwrap();
        let q = q.quaternions().unwrap();
        let direct = cauchy_riemann_left(&f, &P).unwrap();
        assert!((Octonion::from_quaternionic(q[0], q[1]) - direct).max_abs() <= 1e-12);
    }

    #[test]
    fn right_residual_is_the_quaternionic_form_of_the_operator() {
        let f = sample_field();
        let split = QuaternionicSplit::from_field(&f);
        let q = quaternionic_system_residual(&split, &P, Right).unwrap();
        let q = q.quaternions().unwrap();
        let direct = cauchy_riemann_right(&f, &P).unwrap();
        assert!((Octonion::from_quaternionic(q[0], q[1]) - direct).max_abs() <= 1e-12);
    }

    #[test]
    fn decomposition_packs_into_the_inframonogenic_operator() {
        let f = sample_field();
        let (e1, e2) = inframonogenic_decomposition_residual(&QuaternionicSplit::from_field(&f), &P).unwrap();
        let direct = inframonogenic_residual(&f, &P).unwrap();
        assert!(direct.norm() > 1e-3);
        assert!((Octonion::from_quaternionic(-e1, e2) - direct).max_abs() <= 1e-10);
    }

    #[test]
    fn fueter_split_fixture() {
        let g =
            OctonionField::coordinate(1) - OctonionField::coordinate(0) * OctonionField::constant(Octonion::basis(1));
        let split = QuaternionicSplit::new(g, OctonionField::constant(Octonion::ZERO));
        assert!(quaternionic_system_residual(&split, &P, Left).unwrap().max_norm <= 1e-12);
        let (e1, e2) = inframonogenic_decomposition_residual(&split, &P).unwrap();
        assert!(e1.norm() <= 1e-12 && e2.norm() <= 1e-12);
    }

    #[test]
    fn real_pairs() {
        let (x0, x4) = (OctonionField::coordinate(0), OctonionField::coordinate(4));
        let g = x0.clone() * x0.clone() - x4.clone() * x4.clone();
        let h = x0.clone() * x4.clone() * 2.0;
        let (a, b) = real_pair_residual(&g, &h, &P).unwrap();
        assert!(a.norm() <= 1e-12 && b.norm() <= 1e-12);
        let (a, _) = real_pair_residual(&x0, &-x4, &P).unwrap();
        assert!((a.re() - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn non_quaternionic_parts_are_rejected() {
        let split = QuaternionicSplit::new(OctonionField::identity(), OctonionField::constant(Octonion::ZERO));
        assert!(matches!(quaternionic_system_residual(&split, &P, Left), Err(Error::Precondition(_))));
    }
}
