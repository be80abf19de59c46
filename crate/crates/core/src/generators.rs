//! Seeded test fields shared by the suites and the integration tests.

use rand::Rng;

use crate::algebra::Octonion;
use crate::field::{OctonionField, QuadraticCoefficients};
use crate::rng;
use crate::solutions::{biaxial_field, fueter_field, HolomorphicSeed};
use crate::systems::RealSystem;

/// A field of degree two with Gaussian octonion coefficients.
pub fn random_quadratic_field<R: Rng + ?Sized>(r: &mut R) -> OctonionField {
    let constant = Octonion::new(rng::gaussian8(r));
    let linear = std::array::from_fn(|_| Octonion::new(rng::gaussian8(r)));
    let mut quadratic = Vec::with_capacity(36);
    for i in 0..8 {
        for k in i..8 {
            quadratic.push((i, k, Octonion::new(rng::gaussian8(r))));
        }
    }
    OctonionField::quadratic(QuadraticCoefficients { constant, linear, quadratic })
}

/// A left monogenic affine field: random Jacobian `∂ᵢfⱼ` projected onto the
/// null space of the real 8×8 system. The eight constraint rows have disjoint
/// supports and squared norm 8, so one pass of projections is exact.
pub fn random_monogenic_linear_field<R: Rng + ?Sized>(r: &mut R) -> OctonionField {
    let mut jac: [f64; 64] = std::array::from_fn(|_| rng::gaussian(r));
    for row in RealSystem::generate().coefficient_matrix() {
        let dot: f64 = row.iter().zip(&jac).map(|(c, v)| f64::from(*c) * v).sum();
        for (v, c) in jac.iter_mut().zip(row) {
            *v -= dot / 8.0 * f64::from(c);
        }
    }
    let linear = std::array::from_fn(|i| Octonion::new(std::array::from_fn(|j| jac[8 * i + j])));
    let constant = Octonion::new(rng::gaussian8(r));
    OctonionField::quadratic(QuadraticCoefficients { constant, linear, quadratic: Vec::new() })
}

/// `conj(x − p) / |x − p|⁸`, the Cauchy kernel with its pole at `p`.
pub fn cauchy_kernel_field(p: [f64; 8]) -> OctonionField {
    let neg: [f64; 8] = p.map(|v| -v);
    let inv = OctonionField::norm_squared().translate(neg).recip();
    let inv2 = inv.clone() * inv;
    (OctonionField::identity() - OctonionField::constant(Octonion::new(p))).conj() * inv2.clone() * inv2
}

/// Pole of the kernel fixture; at distance > 1.5 from the unit ball.
pub const KERNEL_POLE: [f64; 8] = [2.2, -0.8, 0.5, 0.0, 1.1, 0.3, -0.6, 0.4];

/// Named left monogenic fields.
pub fn monogenic_fixtures() -> Vec<(String, OctonionField)> {
    let mut out = vec![(
        "constant".to_string(),
        OctonionField::constant(Octonion::new([0.5, -1.0, 2.0, 0.0, 0.25, 1.5, -0.75, 1.0])),
    )];
    for i in 1..8 {
        out.push((format!("fueter{i}"), fueter_field(i).expect("index in range")));
    }
    for name in HolomorphicSeed::NAMES {
        out.push((format!("biaxial_{name}"), biaxial_field(&HolomorphicSeed::named(name).expect("built-in seed"))));
    }
    out.push(("cauchy_kernel".to_string(), cauchy_kernel_field(KERNEL_POLE)));
    out
}

/// Every built-in field, monogenic or not.
pub fn builtin_fields() -> Vec<(String, OctonionField)> {
    let x = OctonionField::identity();
    let mut out = monogenic_fixtures();
    out.push(("identity".to_string(), x.clone()));
    out.push(("norm_squared".to_string(), OctonionField::norm_squared()));
    out.push((
        "mixed".to_string(),
        (x.clone() * OctonionField::constant(Octonion::basis(6))) * (x.clone() * x.clone())
            + x.component(2).exp() * x.component(5).sin()
            + x.component(7).cos() * OctonionField::constant(Octonion::basis(3)),
    ));
    let mut r = rng::stream(0, "builtin_fields");
    out.push(("quadratic".to_string(), random_quadratic_field(&mut r)));
    out.push(("monogenic_linear".to_string(), random_monogenic_linear_field(&mut r)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::cauchy_riemann_left;

    #[test]
    fn projected_fields_are_monogenic() {
        let mut r = rng::stream(1, "gen");
        for _ in 0..5 {
            let f = random_monogenic_linear_field(&mut r);
            let x = rng::point_in_ball(&mut r, 1.0);
            assert!(cauchy_riemann_left(&f, &x).unwrap().norm() <= 1e-12);
            let g = random_quadratic_field(&mut r);
            assert!(cauchy_riemann_left(&g, &x).unwrap().norm() > 1e-3);
        }
    }

    #[test]
    fn fixtures_are_monogenic() {
        let x = [0.1, 0.2, -0.3, 0.25, -0.1, 0.05, 0.3, -0.2];
        for (name, f) in monogenic_fixtures() {
            assert!(cauchy_riemann_left(&f, &x).unwrap().norm() <= 1e-9, "{name}");
        }
    }
}
