use octo_cr::algebra::{Octonion, Quaternion, Subalgebra};
use octo_cr::forms::{bilinear_form, rho_action, FormKind};
use octo_cr::generators::random_quadratic_field;
use octo_cr::operators::{cauchy_riemann_left, factorization_residual, Side};
use octo_cr::report::{Recorder, SampleCounts, SuiteReport};
use octo_cr::rng;
use octo_cr::solutions::{ode_residual, spin_action, BiaxialCoordinates};
use octo_cr::systems::{
    complex_system_residual, quaternionic_system_residual, real_system_residual, QuaternionicSplit,
};
use proptest::prelude::*;

fn coords() -> impl Strategy<Value = [f64; 8]> {
    prop::array::uniform8(-3.0f64..3.0)
}

fn octonion() -> impl Strategy<Value = Octonion> {
    coords().prop_map(Octonion::new)
}

fn unit_quaternion() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-1.0f64..1.0)
        .prop_filter("away from zero", |c| c.iter().map(|v| v * v).sum::<f64>() > 1e-2)
        .prop_map(|c| {
            let n = c.iter().map(|v| v * v).sum::<f64>().sqrt();
            Quaternion::new(c.map(|v| v / n))
        })
}

fn close(a: &Octonion, b: &Octonion, scale: f64) -> bool {
    (*a - *b).max_abs() <= 1e-12 * scale.max(1.0)
}

proptest! {
    #[test]
    fn norm_is_multiplicative(x in octonion(), y in octonion()) {
        let lhs = (x * y).norm();
        prop_assert!((lhs - x.norm() * y.norm()).abs() <= 1e-12 * lhs.max(1.0));
    }

    #[test]
    fn alternative_and_moufang(x in octonion(), y in octonion(), z in octonion()) {
        let s = x.norm() * x.norm() * y.norm() * z.norm().max(1.0);
        prop_assert!(close(&(x * (x * y)), &((x * x) * y), s));
        prop_assert!(close(&((y * x) * x), &(y * (x * x)), s));
        prop_assert!(close(&((x * y) * x), &(x * (y * x)), s));
        prop_assert!(close(&((x * y) * (z * x)), &((x * (y * z)) * x), s));
    }

    #[test]
    fn conjugation_reverses_products(x in octonion(), y in octonion()) {
        prop_assert!(close(&(x * y).conj(), &(y.conj() * x.conj()), x.norm() * y.norm()));
        prop_assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn inverse_is_two_sided(x in octonion()) {
        prop_assume!(x.norm() > 1e-3);
        let inv = x.inverse().unwrap();
        prop_assert!(close(&(x * inv), &Octonion::ONE, 1.0));
        prop_assert!(close(&(inv * x), &Octonion::ONE, 1.0));
    }

    #[test]
    fn quaternionic_form_round_trips(x in octonion()) {
        let (a, b) = x.quaternionic_form();
        prop_assert_eq!(Octonion::from_quaternionic(a, b), x);
    }

    #[test]
    fn projections_and_involutions(x in octonion(), y in octonion()) {
        for target in [Subalgebra::Real, Subalgebra::Complex, Subalgebra::Quaternion] {
            let p = x.project(target);
            prop_assert_eq!(p.project(target), p);
        }
        prop_assert!(close(&(x * y).hat(), &(x.hat() * y.hat()), x.norm() * y.norm()));
        prop_assert_eq!(x.star().star(), x);
    }

    #[test]
    fn rho_preserves_real_and_quaternion_forms(q in unit_quaternion(), p in unit_quaternion(), x in octonion(), y in octonion()) {
        let (tx, ty) = (rho_action(&q, &p, &x).unwrap(), rho_action(&q, &p, &y).unwrap());
        let s = x.norm() * y.norm();
        for kind in [FormKind::R, FormKind::H] {
            prop_assert!(close(&bilinear_form(&tx, &ty, kind), &bilinear_form(&x, &y, kind), s));
        }
    }

    #[test]
    fn spin_action_preserves_biaxial_invariants(s in unit_quaternion(), x in coords()) {
        let a = BiaxialCoordinates::from_point(&x);
        let b = BiaxialCoordinates::from_point(&spin_action(&s, &x));
        for (u, v) in [(a.u0, b.u0), (a.v0, b.v0), (a.a, b.a), (a.b, b.b), (a.c, b.c)] {
            prop_assert!((u - v).abs() <= 1e-11);
        }
    }

    #[test]
    fn ode_pair_vanishes(alpha in -5.0f64..5.0, beta in -5.0f64..5.0, c in -3.0f64..3.0) {
        let r = ode_residual(alpha, beta, c);
        prop_assert!(r[0].abs() <= 1e-11 && r[1].abs() <= 1e-11);
    }

    #[test]
    fn systems_repack_the_operator(seed in any::<u64>(), x in prop::array::uniform8(-1.0f64..1.0)) {
        let f = random_quadratic_field(&mut rng::stream(seed, "prop"));
        let direct = cauchy_riemann_left(&f, &x).unwrap();
        let s = direct.max_abs().max(1.0);
        let real = real_system_residual(&f, &x).unwrap();
        for (r, d) in real.reals().unwrap().iter().zip(direct.c) {
            prop_assert!((r - d).abs() <= 1e-12 * s);
        }
        let z = complex_system_residual(&f, &x).unwrap();
        for (k, v) in z.complexes().unwrap().iter().enumerate() {
            prop_assert!((v.re - direct.c[2 * k]).abs() <= 1e-12 * s);
            prop_assert!((v.im - direct.c[2 * k + 1]).abs() <= 1e-12 * s);
        }
        let q = quaternionic_system_residual(&QuaternionicSplit::from_field(&f), &x, Side::Left).unwrap();
        let q = q.quaternions().unwrap();
        prop_assert!(close(&Octonion::from_quaternionic(q[0], q[1]), &direct, s));
        prop_assert!(factorization_residual(&f, &x).unwrap().max_abs() <= 1e-10 * s);
    }

    #[test]
    fn summary_counts_match_records(residuals in prop::collection::vec(0.0f64..2.0, 0..40)) {
        let mut rec = Recorder::new("p", false);
        for (i, r) in residuals.iter().enumerate() {
            rec.at_most(&format!("c{i}"), 1.0, || Ok(*r));
        }
        let report = SuiteReport::new("p", 0, SampleCounts { algebraic: 1, integral: 1 }, rec.finish());
        prop_assert_eq!(report.summary.total, residuals.len());
        prop_assert_eq!(report.summary.passed, residuals.iter().filter(|r| **r <= 1.0).count());
        prop_assert_eq!(report.summary.passed + report.summary.failed, report.summary.total);
    }
}
