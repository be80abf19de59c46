//! Bilinear forms on O and sampled invariance of their symmetry groups.
//!
//! `B_R(x, y) = RE(xȳ)`, `B_C(x, y) = CO(xȳ)` and `B_H(x, y) = QU(xȳ)`.
//! Group membership is only ever checked on sampled elements: a residual
//! near zero shows that a given map preserves a form, never that the
//! symmetry group is exactly `SO(8)`, `U(4)` or contains nothing else.

use nalgebra::SMatrix;
use serde::Deserialize;

use crate::algebra::{Octonion, Quaternion, Subalgebra};
use crate::rng;
use crate::{Error, Result};

const SYMPLECTIC_FIXTURE: &str = include_str!("../fixtures/symplectic_basis.json");

/// Unit-norm tolerance for the quaternions of [`rho_action`].
pub const UNIT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormKind {
    R,
    C,
    H,
}

impl FormKind {
    pub fn subalgebra(self) -> Subalgebra {
        match self {
            FormKind::R => Subalgebra::Real,
            FormKind::C => Subalgebra::Complex,
            FormKind::H => Subalgebra::Quaternion,
        }
    }
}

/// `B_kind(x, y)`, valued in the kind's subalgebra.
pub fn bilinear_form(x: &Octonion, y: &Octonion, kind: FormKind) -> Octonion {
    (*x * y.conj()).project(kind.subalgebra())
}

/// `Σⱼ xⱼyⱼ`.
pub fn real_form_closed(x: &Octonion, y: &Octonion) -> f64 {
    x.dot(y)
}

/// `x₄y₀ − x₅y₁ − x₆y₂ − x₇y₃ − x₀y₄ + x₁y₅ + x₂y₆ + x₃y₇`.
pub fn im_complex_form_closed(x: &Octonion, y: &Octonion) -> f64 {
    let (x, y) = (&x.c, &y.c);
    x[4] * y[0] - x[5] * y[1] - x[6] * y[2] - x[7] * y[3] - x[0] * y[4] + x[1] * y[5] + x[2] * y[6] + x[3] * y[7]
}

/// `a₁ā₂ + b̄₂b₁` for `x = a₁ + b₁e₄`, `y = a₂ + b₂e₄`.
pub fn quaternion_form_closed(x: &Octonion, y: &Octonion) -> Quaternion {
    let (a1, b1) = x.quaternionic_form();
    let (a2, b2) = y.quaternionic_form();
    a1 * a2.conj() + b2.conj() * b1
}

/// A real linear map of O by its matrix `[T]`, `Tx = Σᵢⱼ Tᵢⱼxⱼeᵢ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearMap8(pub SMatrix<f64, 8, 8>);

impl LinearMap8 {
    pub fn identity() -> Self {
        Self(SMatrix::identity())
    }

    pub fn from_rows(rows: [[f64; 8]; 8]) -> Self {
        Self(SMatrix::from_fn(|i, j| rows[i][j]))
    }

    /// The matrix of a linear map given as a function (column `j` is `T(eⱼ)`).
    pub fn from_linear(map: impl Fn(&Octonion) -> Octonion) -> Self {
        let cols: Vec<Octonion> = (0..8).map(|j| map(&Octonion::basis(j))).collect();
        Self(SMatrix::from_fn(|i, j| cols[j].c[i]))
    }

    pub fn diagonal(d: [f64; 8]) -> Self {
        Self(SMatrix::from_fn(|i, j| if i == j { d[i] } else { 0.0 }))
    }

    /// The map sending `e_j` to `e_{perm[j]}`.
    pub fn permutation(perm: [usize; 8]) -> Self {
        Self(SMatrix::from_fn(|i, j| if perm[j] == i { 1.0 } else { 0.0 }))
    }

    /// `[[0, I₄], [−I₄, 0]]`.
    pub fn standard_symplectic() -> Self {
        Self(SMatrix::from_fn(|i, j| match (i < 4, j < 4) {
            (true, false) if j == i + 4 => 1.0,
            (false, true) if i == j + 4 => -1.0,
            _ => 0.0,
        }))
    }

    pub fn apply(&self, x: &Octonion) -> Octonion {
        Octonion::new(std::array::from_fn(|i| (0..8).map(|j| self.0[(i, j)] * x.c[j]).sum()))
    }

    /// `[TS] = [T][S]`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self(self.0 * other.0)
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    /// `max |TᵀT − I|`.
    pub fn orthogonality_residual(&self) -> f64 {
        (self.0.transpose() * self.0 - SMatrix::<f64, 8, 8>::identity()).abs().max()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }
}

#[derive(Deserialize)]
struct SymplecticFixture {
    permutation: [usize; 8],
    im_bc_gram: [[f64; 8]; 8],
}

fn symplectic_fixture() -> SymplecticFixture {
    serde_json::from_str(SYMPLECTIC_FIXTURE).expect("symplectic fixture parses")
}

/// The Gram matrix of `IM(B_C)` as printed in the fixture.
pub fn im_complex_form_gram() -> LinearMap8 {
    LinearMap8::from_rows(symplectic_fixture().im_bc_gram)
}

/// The `x₀ ↔ x₄` coordinate swap from the fixture (an involution).
pub fn symplectic_coordinate_swap() -> LinearMap8 {
    LinearMap8::permutation(symplectic_fixture().permutation)
}

/// Haar-distributed element of `SO(8)`: QR of a Gaussian matrix with the
/// diagonal of `R` made positive, then one column negated if `det = −1`.
pub fn random_orthogonal(seed: u64) -> LinearMap8 {
    let mut r = rng::stream(seed, "random_orthogonal");
    let g = SMatrix::<f64, 8, 8>::from_fn(|_, _| rng::gaussian(&mut r));
    let qr = g.qr();
    let mut q = qr.q();
    let rr = qr.r();
    for j in 0..8 {
        if rr[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    LinearMap8(q)
}

fn check_unit(what: &'static str, q: &Quaternion) -> Result<()> {
    let norm = q.norm();
    if (norm - 1.0).abs() > UNIT_TOLERANCE {
        return Err(Error::NotUnit { what, norm });
    }
    Ok(())
}

/// `ρ_{q,p}(a + be₄) = R_q a + (L_p b)e₄ = aq + (pb)e₄` for unit `q`, `p`.
pub fn rho_action(q: &Quaternion, p: &Quaternion, x: &Octonion) -> Result<Octonion> {
    check_unit("q", q)?;
    check_unit("p", p)?;
    let (a, b) = x.quaternionic_form();
    Ok(Octonion::from_quaternionic(q.right_mul(&a), p.left_mul(&b)))
}

/// The matrix of `ρ_{q,p}`.
pub fn rho_map(q: &Quaternion, p: &Quaternion) -> Result<LinearMap8> {
    check_unit("q", q)?;
    check_unit("p", p)?;
    Ok(LinearMap8::from_linear(|x| rho_action(q, p, x).expect("units checked")))
}

/// `max ‖B(Tx, Ty) − B(x, y)‖` over seeded samples with norms in `[0.5, 2]`.
pub fn invariance_residual(t: &LinearMap8, kind: FormKind, samples: usize, seed: u64) -> f64 {
    (0..samples as u64)
        .map(|i| {
            let mut r = rng::indexed(seed, "invariance_residual", i);
            let (x, y) = (rng::octonion(&mut r), rng::octonion(&mut r));
            let before = bilinear_form(&x, &y, kind);
            let after = bilinear_form(&t.apply(&x), &t.apply(&y), kind);
            (after - before).norm()
        })
        .fold(0.0, f64::max)
}

/// `max |IM B_C(Tx, Ty) − IM B_C(x, y)|` for a map `t` given in the permuted
/// coordinates where `IM(B_C)` has Gram matrix `[[0, I₄], [−I₄, 0]]`.
pub fn symplectic_invariance_residual(t: &LinearMap8, samples: usize, seed: u64) -> f64 {
    let swap = symplectic_coordinate_swap();
    let original = swap.compose(t).compose(&swap);
    (0..samples as u64)
        .map(|i| {
            let mut r = rng::indexed(seed, "symplectic_residual", i);
            let (x, y) = (rng::octonion(&mut r), rng::octonion(&mut r));
            let before = bilinear_form(&x, &y, FormKind::C).c[4];
            let after = bilinear_form(&original.apply(&x), &original.apply(&y), FormKind::C).c[4];
            (after - before).abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> Octonion {
        Octonion::basis(i)
    }

    #[test]
    fn basis_values() {
        assert_eq!(bilinear_form(&e(1), &e(1), FormKind::R), Octonion::ONE);
        assert_eq!(bilinear_form(&e(4), &e(4), FormKind::H), Octonion::ONE);
        assert_eq!(quaternion_form_closed(&e(4), &e(4)), Quaternion::ONE);
    }

    #[test]
    fn closed_forms_agree_with_projections() {
        let mut r = rng::stream(11, "closed_forms");
        for _ in 0..200 {
            let (x, y) = (rng::octonion(&mut r), rng::octonion(&mut r));
            let br = bilinear_form(&x, &y, FormKind::R);
            let bc = bilinear_form(&x, &y, FormKind::C);
            let bh = bilinear_form(&x, &y, FormKind::H);
            assert!((br.re() - real_form_closed(&x, &y)).abs() < 1e-12);
            assert!((bc.re() - br.re()).abs() < 1e-12);
            assert!((bc.c[4] - im_complex_form_closed(&x, &y)).abs() < 1e-12);
            let (q, _) = bh.quaternionic_form();
            assert!((q - quaternion_form_closed(&x, &y)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn gram_fixture_matches_the_form_and_swaps_to_standard() {
        let gram = im_complex_form_gram();
        for i in 0..8 {
            for j in 0..8 {
                let v = bilinear_form(&e(i), &e(j), FormKind::C).c[4];
                assert_eq!(v, gram.entry(i, j), "({i}, {j})");
            }
        }
        let swap = symplectic_coordinate_swap();
        let permuted = swap.transpose().compose(&gram).compose(&swap);
        assert_eq!(permuted, LinearMap8::standard_symplectic());
    }

    #[test]
    fn linear_maps() {
        let x = Octonion::new([0.1, 0.2, -0.3, 0.4, 0.5, -0.6, 0.7, 0.8]);
        assert_eq!(LinearMap8::identity().apply(&x), x);
        assert_eq!(LinearMap8::identity().determinant(), 1.0);
        assert_eq!(symplectic_coordinate_swap().apply(&Octonion::ONE), e(4));
        let (t, s) = (random_orthogonal(1), random_orthogonal(2));
        let lhs = t.apply(&s.apply(&x));
        let rhs = t.compose(&s).apply(&x);
        assert!((lhs - rhs).max_abs() < 1e-12);
    }

    #[test]
    fn random_orthogonal_properties() {
        let t = random_orthogonal(7);
        assert!(t.orthogonality_residual() <= 1e-12);
        assert!((t.determinant() - 1.0).abs() < 1e-12);
        assert_eq!(t, random_orthogonal(7));
        assert_ne!(t, random_orthogonal(8));
        assert!(invariance_residual(&t, FormKind::R, 200, 3) <= 1e-10);
    }

    #[test]
    fn rho_action_cases() {
        let x = Octonion::new([0.3, -0.2, 0.5, 1.0, -0.7, 0.1, 0.25, -0.4]);
        let one = Quaternion::ONE;
        assert_eq!(rho_action(&one, &one, &x).unwrap(), x);
        let i = Quaternion::basis(1);
        assert_eq!(rho_action(&i, &one, &Octonion::ONE).unwrap(), e(1));
        let bad = Quaternion::real(1.5);
        assert!(matches!(rho_action(&bad, &one, &x), Err(Error::NotUnit { what: "q", .. })));
        assert!(matches!(rho_action(&one, &bad, &x), Err(Error::NotUnit { what: "p", .. })));
    }

    #[test]
    fn symplectic_residuals() {
        assert_eq!(symplectic_invariance_residual(&LinearMap8::identity(), 100, 1), 0.0);
        let j = LinearMap8::standard_symplectic();
        assert!(symplectic_invariance_residual(&j, 500, 1) <= 1e-10);
        let mut d = [1.0; 8];
        d[0] = 2.0;
        assert!(symplectic_invariance_residual(&LinearMap8::diagonal(d), 500, 1) > 0.1);
    }
}
