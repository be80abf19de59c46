//! Explicit monogenic fields.
//!
//! [`fueter_field`] gives the linear fields `xᵢ − x₀eᵢ`. [`biaxial_field`]
//! builds the biaxially symmetric family
//!
//! ```text
//! f = e^d [(α sin 2c + β cos 2c) + (−α cos 2c + β sin 2c) e₄]
//! ```
//!
//! from a holomorphic seed `α + iβ` in `(u₀, v₀) = (x₀, x₄)`, where
//! `a = |𝐮|²`, `b = |𝐯|²`, `c = ⟨𝐮, 𝐯⟩` and `d = a − b`.

use std::fmt;

use serde::Serialize;

use crate::algebra::{Octonion, Quaternion};
use crate::field::OctonionField;
use crate::jet::{Jet, Scalar};
use crate::{Error, Result};

/// Tolerance of the seed's Cauchy–Riemann check.
pub const SEED_TOLERANCE: f64 = 1e-10;

/// `x ↦ xᵢ − x₀eᵢ` for `i` in `1..=7`.
pub fn fueter_field(i: usize) -> Result<OctonionField> {
    if !(1..=7).contains(&i) {
        return Err(Error::IndexOutOfRange { index: i, range: "1..=7" });
    }
    Ok(OctonionField::coordinate(i) - OctonionField::coordinate(0) * OctonionField::constant(Octonion::basis(i)))
}

/// A pair `(α, β)` of real-valued fields of `(u₀, v₀) = (x₀, x₄)` with
/// `∂_{u₀}α = ∂_{v₀}β` and `∂_{v₀}α = −∂_{u₀}β`.
#[derive(Clone)]
pub struct HolomorphicSeed {
    name: String,
    alpha: OctonionField,
    beta: OctonionField,
}

impl fmt::Debug for HolomorphicSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HolomorphicSeed").field("name", &self.name).finish_non_exhaustive()
    }
}

/// Points at which [`HolomorphicSeed::new`] checks the Cauchy–Riemann pair.
const SEED_PROBES: [[f64; 2]; 4] = [[0.0, 0.0], [0.3, -0.7], [-1.1, 0.4], [0.9, 1.2]];

fn plane(u0: f64, v0: f64) -> [f64; 8] {
    let mut x = [0.0; 8];
    x[0] = u0;
    x[4] = v0;
    x
}

impl HolomorphicSeed {
    pub const NAMES: [&'static str; 4] = ["const", "z", "z2", "exp"];

    /// Custom seed; fails if the Cauchy–Riemann residual at a few probe
    /// points exceeds [`SEED_TOLERANCE`].
    pub fn new(name: impl Into<String>, alpha: OctonionField, beta: OctonionField) -> Result<Self> {
        let seed = Self { name: name.into(), alpha: alpha.component(0), beta: beta.component(0) };
        for [u0, v0] in SEED_PROBES {
            let r = seed.cauchy_riemann_residual(u0, v0)?;
            if r > SEED_TOLERANCE {
                return Err(Error::Precondition(format!(
                    "seed {} is not holomorphic: residual {r:e} at ({u0}, {v0})",
                    seed.name
                )));
            }
        }
        Ok(seed)
    }

    /// One of `const` (1), `z`, `z2` (z²) and `exp` (eᶻ).
    pub fn named(name: &str) -> Result<Self> {
        let u = OctonionField::coordinate(0);
        let v = OctonionField::coordinate(4);
        let (alpha, beta) = match name {
            "const" => (OctonionField::constant(1.0), OctonionField::constant(0.0)),
            "z" => (u, v),
            "z2" => (u.clone() * u.clone() - v.clone() * v.clone(), u * v * 2.0),
            "exp" => (u.exp() * v.cos(), u.exp() * v.sin()),
            other => return Err(Error::Domain(format!("unknown seed {other:?}; expected one of const, z, z2, exp"))),
        };
        Self::new(name, alpha, beta)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alpha(&self) -> &OctonionField {
        &self.alpha
    }

    pub fn beta(&self) -> &OctonionField {
        &self.beta
    }

    /// `max(|∂_{u₀}α − ∂_{v₀}β|, |∂_{v₀}α + ∂_{u₀}β|)`.
    pub fn cauchy_riemann_residual(&self, u0: f64, v0: f64) -> Result<f64> {
        let x = plane(u0, v0);
        let a = self.alpha.eval_jet(&x)?.components[0].grad;
        let b = self.beta.eval_jet(&x)?.components[0].grad;
        Ok((a[0] - b[4]).abs().max((a[4] + b[0]).abs()))
    }

    /// `(α, β)` on any scalar type, reading only `u₀` and `v₀`.
    fn eval_pair<S: Scalar>(&self, u0: S, v0: S) -> Result<(S, S)> {
        let mut x = [S::zero(); 8];
        x[0] = u0;
        x[4] = v0;
        Ok((self.alpha.eval_with(&x)?[0], self.beta.eval_with(&x)?[0]))
    }
}

/// The invariants `(u₀, v₀, a, b, c)` of a point `x = u + ve₄`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BiaxialCoordinates {
    pub u0: f64,
    pub v0: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl BiaxialCoordinates {
    /// Fails unless `a ≥ 0`, `b ≥ 0` and `c² ≤ ab`.
    pub fn new(u0: f64, v0: f64, a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a >= 0.0 && b >= 0.0) {
            return Err(Error::Domain(format!("a = {a} and b = {b} must be non-negative")));
        }
        if c * c > a * b * (1.0 + 1e-12) + 1e-300 {
            return Err(Error::Domain(format!("c² = {} exceeds ab = {}", c * c, a * b)));
        }
        Ok(Self { u0, v0, a, b, c })
    }

    pub fn from_point(x: &[f64; 8]) -> Self {
        let a = (1..4).map(|i| x[i] * x[i]).sum();
        let b = (5..8).map(|i| x[i] * x[i]).sum();
        let c = (1..4).map(|i| x[i] * x[i + 4]).sum();
        Self { u0: x[0], v0: x[4], a, b, c }
    }

    pub fn d(&self) -> f64 {
        self.a - self.b
    }
}

/// `(u₀ + s̄𝐮s) + (v₀ + s̄𝐯s)e₄`.
pub fn spin_action(s: &Quaternion, x: &[f64; 8]) -> [f64; 8] {
    let rotate = |w: [f64; 3]| {
        let q = s.conj() * Quaternion::new([0.0, w[0], w[1], w[2]]) * *s;
        [q.c[1], q.c[2], q.c[3]]
    };
    let u = rotate([x[1], x[2], x[3]]);
    let v = rotate([x[5], x[6], x[7]]);
    [x[0], u[0], u[1], u[2], x[4], v[0], v[1], v[2]]
}

/// The published form and three sign-perturbed alternatives, used to
/// diagnose which one is monogenic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BiaxialVariant {
    Published,
    /// `h ↦ −h`.
    NegatedH,
    /// `e^{b−a}` in place of `e^{a−b}`.
    ReversedExponent,
    /// `c ↦ −c`.
    NegatedAngle,
}

impl BiaxialVariant {
    pub const ALL: [Self; 4] = [Self::Published, Self::NegatedH, Self::ReversedExponent, Self::NegatedAngle];
}

/// What [`biaxial_parts`] needs: jets, plain numbers and symbolic fields.
trait Elementary:
    Clone
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Neg<Output = Self>
{
    fn exp(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
}

impl<S: Scalar> Elementary for S {
    fn exp(&self) -> Self {
        Scalar::exp(*self)
    }
    fn sin(&self) -> Self {
        Scalar::sin(*self)
    }
    fn cos(&self) -> Self {
        Scalar::cos(*self)
    }
}

impl Elementary for OctonionField {
    fn exp(&self) -> Self {
        OctonionField::exp(self)
    }
    fn sin(&self) -> Self {
        OctonionField::sin(self)
    }
    fn cos(&self) -> Self {
        OctonionField::cos(self)
    }
}

/// `(g, h)` as functions of the invariants.
fn biaxial_parts<S: Elementary>(alpha: S, beta: S, a: S, b: S, c: S, variant: BiaxialVariant) -> (S, S) {
    let d = match variant {
        BiaxialVariant::ReversedExponent => b - a,
        _ => a - b,
    };
    let c = match variant {
        BiaxialVariant::NegatedAngle => -c,
        _ => c,
    };
    let scale = d.exp();
    let two_c = c.clone() + c;
    let (sin, cos) = (two_c.sin(), two_c.cos());
    let g = scale.clone() * (alpha.clone() * sin.clone() + beta.clone() * cos.clone());
    let h = scale * (beta * sin - alpha * cos);
    match variant {
        BiaxialVariant::NegatedH => (g, -h),
        _ => (g, h),
    }
}

pub fn biaxial_field(seed: &HolomorphicSeed) -> OctonionField {
    biaxial_field_variant(seed, BiaxialVariant::Published)
}

pub fn biaxial_field_variant(seed: &HolomorphicSeed, variant: BiaxialVariant) -> OctonionField {
    let x = |i| OctonionField::coordinate(i);
    let sum = |terms: Vec<OctonionField>| terms.into_iter().reduce(|p, q| p + q).expect("three terms");
    let a = sum((1..4).map(|i| x(i) * x(i)).collect());
    let b = sum((5..8).map(|i| x(i) * x(i)).collect());
    let c = sum((1..4).map(|i| x(i) * x(i + 4)).collect());
    let (g, h) = biaxial_parts(seed.alpha.clone(), seed.beta.clone(), a, b, c, variant);
    g + h * OctonionField::constant(Octonion::basis(4))
}

/// The six first-order equations for `(g, h)` in the invariants:
///
/// ```text
/// 2∂_a g − ∂_c h,  ∂_c g − 2∂_b h,  2∂_a h + ∂_c g,
/// ∂_c h + 2∂_b g,  ∂_{u₀}g − ∂_{v₀}h,  ∂_{u₀}h + ∂_{v₀}g
/// ```
pub fn reduced_system_residual(seed: &HolomorphicSeed, coords: &BiaxialCoordinates) -> Result<[f64; 6]> {
    let (g, h) = invariant_jets(seed, coords)?;
    let (dg, dh) = (g.grad, h.grad);
    const U0: usize = 0;
    const V0: usize = 1;
    const A: usize = 2;
    const B: usize = 3;
    const C: usize = 4;
    Ok([
        2.0 * dg[A] - dh[C],
        dg[C] - 2.0 * dh[B],
        2.0 * dh[A] + dg[C],
        dh[C] + 2.0 * dg[B],
        dg[U0] - dh[V0],
        dh[U0] + dg[V0],
    ])
}

/// `(∂_a g + ∂_b g, ∂_a h + ∂_b h)`.
pub fn transport_residual(seed: &HolomorphicSeed, coords: &BiaxialCoordinates) -> Result<[f64; 2]> {
    let (g, h) = invariant_jets(seed, coords)?;
    Ok([g.grad[2] + g.grad[3], h.grad[2] + h.grad[3]])
}

fn invariant_jets(seed: &HolomorphicSeed, coords: &BiaxialCoordinates) -> Result<(Jet<5>, Jet<5>)> {
    let coords = BiaxialCoordinates::new(coords.u0, coords.v0, coords.a, coords.b, coords.c)?;
    let [u0, v0, a, b, c] = Jet::<5>::seed(&[coords.u0, coords.v0, coords.a, coords.b, coords.c]);
    let (alpha, beta) = seed.eval_pair(u0, v0)?;
    Ok(biaxial_parts(alpha, beta, a, b, c, BiaxialVariant::Published))
}

/// `(2q − ∂_c p, 2p + ∂_c q)` for `p = −α cos 2c + β sin 2c` and
/// `q = α sin 2c + β cos 2c` with constant `α`, `β`.
pub fn ode_residual(alpha: f64, beta: f64, c: f64) -> [f64; 2] {
    let c = Jet::<1>::variable(c, 0);
    let two_c = c * 2.0;
    let p = Elementary::sin(&two_c) * beta - two_c.cos() * alpha;
    let q = two_c.sin() * alpha + two_c.cos() * beta;
    [2.0 * q.value - p.grad[0], 2.0 * p.value + q.grad[0]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{cauchy_riemann_left, cauchy_riemann_right, laplacian};
    use crate::rng;

    fn points(label: &str, n: usize, radius: f64) -> Vec<[f64; 8]> {
        let mut r = rng::stream(11, label);
        (0..n).map(|_| rng::point_in_ball(&mut r, radius)).collect()
    }

    #[test]
    fn fueter_fields() {
        let f = fueter_field(1).unwrap();
        assert_eq!(f.eval(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap(), -Octonion::basis(1));
        for i in 1..8 {
            let f = fueter_field(i).unwrap();
            for x in points("fueter", 20, 1.5) {
                assert!(cauchy_riemann_left(&f, &x).unwrap().norm() <= 1e-12);
                assert!(cauchy_riemann_right(&f, &x).unwrap().norm() <= 1e-12);
            }
        }
        assert!(matches!(fueter_field(0), Err(Error::IndexOutOfRange { index: 0, .. })));
        assert!(fueter_field(8).is_err());
    }

    #[test]
    fn named_seeds_are_holomorphic() {
        for name in HolomorphicSeed::NAMES {
            let seed = HolomorphicSeed::named(name).unwrap();
            assert_eq!(seed.name(), name);
            assert!(seed.cauchy_riemann_residual(0.4, -0.2).unwrap() <= 1e-12);
        }
        assert!(HolomorphicSeed::named("sinh").is_err());
        let bad = HolomorphicSeed::new("conj", OctonionField::coordinate(0), -OctonionField::coordinate(4));
        assert!(matches!(bad, Err(Error::Precondition(_))));
    }

    #[test]
    fn constant_seed_at_the_origin() {
        let f = biaxial_field(&HolomorphicSeed::named("const").unwrap());
        assert_eq!(f.eval(&[0.0; 8]).unwrap(), -Octonion::basis(4));
    }

    #[test]
    fn biaxial_fields_are_monogenic_and_harmonic() {
        for name in HolomorphicSeed::NAMES {
            let f = biaxial_field(&HolomorphicSeed::named(name).unwrap());
            for x in points(name, 20, 1.5) {
                let cr = cauchy_riemann_left(&f, &x).unwrap().norm();
                assert!(cr <= 1e-9, "{name}: {cr:e}");
                assert!(laplacian(&f, &x).unwrap().norm() <= 1e-7);
            }
        }
    }

    #[test]
    fn only_the_published_variant_is_monogenic() {
        let seed = HolomorphicSeed::named("z").unwrap();
        let x = [0.3, 0.2, -0.4, 0.1, -0.2, 0.5, 0.3, -0.1];
        for variant in BiaxialVariant::ALL {
            let r = cauchy_riemann_left(&biaxial_field_variant(&seed, variant), &x).unwrap().norm();
            if variant == BiaxialVariant::Published {
                assert!(r <= 1e-12);
            } else {
                assert!(r > 1e-3, "{variant:?}");
            }
        }
    }

    #[test]
    fn reduced_system_and_transport() {
        let seed = HolomorphicSeed::named("const").unwrap();
        let at = BiaxialCoordinates::new(0.0, 0.0, 1.0, 1.0, 0.0).unwrap();
        assert!(reduced_system_residual(&seed, &at).unwrap().iter().all(|r| r.abs() <= 1e-10));
        for name in HolomorphicSeed::NAMES {
            let seed = HolomorphicSeed::named(name).unwrap();
            for x in points("reduced", 10, 1.5) {
                let at = BiaxialCoordinates::from_point(&x);
                assert!(reduced_system_residual(&seed, &at).unwrap().iter().all(|r| r.abs() <= 1e-9));
                assert!(transport_residual(&seed, &at).unwrap().iter().all(|r| r.abs() <= 1e-10));
            }
        }
    }

    #[test]
    fn infeasible_invariants_are_rejected() {
        assert!(BiaxialCoordinates::new(0.0, 0.0, 1.0, 1.0, 1.5).is_err());
        assert!(BiaxialCoordinates::new(0.0, 0.0, -1.0, 1.0, 0.0).is_err());
        let seed = HolomorphicSeed::named("z").unwrap();
        let bad = BiaxialCoordinates { u0: 0.0, v0: 0.0, a: 0.1, b: 0.1, c: 1.0 };
        assert!(matches!(reduced_system_residual(&seed, &bad), Err(Error::Domain(_))));
    }

    #[test]
    fn ode_pair() {
        for (alpha, beta, c) in [(1.0, 0.0, 0.0), (0.3, -2.0, 1.7), (-1.2, 0.5, -0.4)] {
            assert!(ode_residual(alpha, beta, c).iter().all(|r| r.abs() <= 1e-12));
        }
    }

    #[test]
    fn invariants_are_spin_invariant() {
        let mut r = rng::stream(3, "spin");
        for _ in 0..50 {
            let s = rng::unit_quaternion(&mut r);
            let x = rng::point_in_ball(&mut r, 2.0);
            let p = BiaxialCoordinates::from_point(&x);
            let q = BiaxialCoordinates::from_point(&spin_action(&s, &x));
            assert!((p.u0 - q.u0).abs() + (p.v0 - q.v0).abs() <= 1e-12);
            assert!((p.a - q.a).abs() <= 1e-12 && (p.b - q.b).abs() <= 1e-12 && (p.c - q.c).abs() <= 1e-12);
        }
    }
}
