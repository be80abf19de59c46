//! Cauchy–Riemann, Dirac and Laplace operators on octonion-valued fields.
//!
//! With `f = Σⱼ eⱼfⱼ` the left and right Cauchy–Riemann operators are
//!
//! ```text
//! ∂ₓf = Σᵢⱼ (eᵢeⱼ) ∂ᵢfⱼ        f∂ₓ = Σᵢⱼ (eⱼeᵢ) ∂ᵢfⱼ
//! ```
//!
//! and every basis product is read off the derived [`structure_table`]. The
//! second-order operators differentiate the first-order result once more
//! using the Hessian of the jet, so no finite differencing enters the primary
//! path. [`fd`] holds the finite-difference cross-check.

use crate::algebra::{structure_table, BasisProduct, Octonion};
use crate::field::{OctonionField, OctonionJet2};
use crate::Result;

#[inline]
fn accumulate(out: &mut Octonion, p: BasisProduct, v: f64) {
    out.c[p.index as usize] += f64::from(p.sign) * v;
}

/// Which side the operator symbol multiplies from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `Σᵢⱼ (eᵢeⱼ) dᵢ[j]` (left) or `Σᵢⱼ (eⱼeᵢ) dᵢ[j]` (right) for derivative data
/// `dᵢ = ∂ᵢf` over the coordinates in `coords`, with the imaginary symbols
/// negated when `conjugate` is set.
fn apply_symbol(
    side: Side,
    conjugate: bool,
    coords: std::ops::Range<usize>,
    d: impl Fn(usize) -> Octonion,
) -> Octonion {
    let table = structure_table();
    let mut out = Octonion::ZERO;
    for i in coords {
        let di = d(i);
        let s = if conjugate && i > 0 { -1.0 } else { 1.0 };
        for j in 0..8 {
            let p = match side {
                Side::Left => table.get(i, j),
                Side::Right => table.get(j, i),
            };
            accumulate(&mut out, p, s * di.c[j]);
        }
    }
    out
}

impl OctonionJet2 {
    /// `∂ₓf`.
    pub fn cauchy_riemann_left(&self) -> Octonion {
        apply_symbol(Side::Left, false, 0..8, |i| self.partial(i))
    }

    /// `f∂ₓ`.
    pub fn cauchy_riemann_right(&self) -> Octonion {
        apply_symbol(Side::Right, false, 0..8, |i| self.partial(i))
    }

    /// `∂ₓ̄f = ∂ₓ₀f − ∂𝐱f`.
    pub fn conjugate_cauchy_riemann(&self) -> Octonion {
        apply_symbol(Side::Left, true, 0..8, |i| self.partial(i))
    }

    /// Dirac operator `∂𝐱f = Σᵢ₌₁⁷ eᵢ∂ᵢf` (from the left).
    pub fn dirac(&self) -> Octonion {
        apply_symbol(Side::Left, false, 1..8, |i| self.partial(i))
    }

    /// `∂ₖ(∂ₓf)` from the Hessian.
    fn left_cr_partial(&self, k: usize) -> Octonion {
        apply_symbol(Side::Left, false, 0..8, |i| self.second(k, i))
    }

    /// `∂ₖ(f∂ₓ)` from the Hessian.
    fn right_cr_partial(&self, k: usize) -> Octonion {
        apply_symbol(Side::Right, false, 0..8, |i| self.second(k, i))
    }

    /// `∂ₓ̄(∂ₓf) − Δf`.
    pub fn factorization_residual(&self) -> Octonion {
        apply_symbol(Side::Left, true, 0..8, |k| self.left_cr_partial(k)) - self.laplacian()
    }

    /// `(∂ₓf)∂ₓ`: the left operator first, then the right one.
    pub fn inframonogenic(&self) -> Octonion {
        apply_symbol(Side::Right, false, 0..8, |k| self.left_cr_partial(k))
    }

    /// `∂ₓ(f∂ₓ)`: the right operator first. Agrees with
    /// [`inframonogenic`](Self::inframonogenic) because the associator is
    /// alternating and the Hessian symmetric.
    pub fn inframonogenic_right_first(&self) -> Octonion {
        apply_symbol(Side::Left, false, 0..8, |k| self.right_cr_partial(k))
    }
}

pub fn evaluate_jet(f: &OctonionField, x: &[f64; 8]) -> Result<OctonionJet2> {
    f.eval_jet(x)
}

pub fn cauchy_riemann_left(f: &OctonionField, x: &[f64; 8]) -> Result<Octonion> {
    Ok(f.eval_jet(x)?.cauchy_riemann_left())
}

pub fn cauchy_riemann_right(f: &OctonionField, x: &[f64; 8]) -> Result<Octonion> {
    Ok(f.eval_jet(x)?.cauchy_riemann_right())
}

pub fn conjugate_cr(f: &OctonionField, x: &[f64; 8]) -> Result<Octonion> {
    Ok(f.eval_jet(x)?.conjugate_cauchy_riemann())
}

pub fn dirac(f: &OctonionField, x: &[f64; 8]) -> Result<Octonion> {
    Ok(f.eval_jet(x)?.dirac())
}

pub fn laplacian(f: &OctonionField, x: &[f64; 8]) -> Result<Octonion> {
    Ok(f.eval_jet(x)?.laplacian())
}

pub fn factorization_residual(f: &OctonionField, x: &[f64; 8]) -> Result<Octonion> {
    Ok(f.eval_jet(x)?.factorization_residual())
}

pub fn inframonogenic_residual(f: &OctonionField, x: &[f64; 8]) -> Result<Octonion> {
    Ok(f.eval_jet(x)?.inframonogenic())
}

/// Central finite differences of point evaluations.
pub mod fd {
    use super::*;

    /// Step used by the cross-checks.
    pub const STEP: f64 = 1e-4;

    fn shifted(x: &[f64; 8], moves: &[(usize, f64)]) -> [f64; 8] {
        let mut y = *x;
        for &(i, d) in moves {
            y[i] += d;
        }
        y
    }

    /// `(f(x + heᵢ) − f(x − heᵢ)) / 2h`.
    pub fn partial(f: &OctonionField, x: &[f64; 8], i: usize, h: f64) -> Result<Octonion> {
        let p = f.eval(&shifted(x, &[(i, h)]))?;
        let m = f.eval(&shifted(x, &[(i, -h)]))?;
        Ok((p - m) / (2.0 * h))
    }

    /// Second differences; the diagonal uses the three-point stencil.
    pub fn second(f: &OctonionField, x: &[f64; 8], i: usize, k: usize, h: f64) -> Result<Octonion> {
        if i == k {
            let p = f.eval(&shifted(x, &[(i, h)]))?;
            let c = f.eval(x)?;
            let m = f.eval(&shifted(x, &[(i, -h)]))?;
            return Ok((p - c * 2.0 + m) / (h * h));
        }
        let pp = f.eval(&shifted(x, &[(i, h), (k, h)]))?;
        let pm = f.eval(&shifted(x, &[(i, h), (k, -h)]))?;
        let mp = f.eval(&shifted(x, &[(i, -h), (k, h)]))?;
        let mm = f.eval(&shifted(x, &[(i, -h), (k, -h)]))?;
        Ok((pp - pm - mp + mm) / (4.0 * h * h))
    }

    /// Largest first- and second-order deviation between the jet and finite
    /// differences at `x`, as `(first, second)`.
    pub fn jet_deviation(f: &OctonionField, x: &[f64; 8]) -> Result<(f64, f64)> {
        let jet = f.eval_jet(x)?;
        let mut first: f64 = 0.0;
        let mut second_dev: f64 = 0.0;
        for i in 0..8 {
            first = first.max((jet.partial(i) - partial(f, x, i, STEP)?).max_abs());
            for k in i..8 {
                second_dev = second_dev.max((jet.second(i, k) - second(f, x, i, k, STEP)?).max_abs());
            }
        }
        Ok((first, second_dev))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: [f64; 8] = [0.21, -0.4, 0.13, 0.5, -0.32, 0.07, 0.44, -0.18];

    fn e(i: usize) -> Octonion {
        Octonion::basis(i)
    }

    fn fueter1() -> OctonionField {
        OctonionField::coordinate(1) - OctonionField::coordinate(0) * OctonionField::constant(e(1))
    }

    #[test]
    fn identity_field() {
        let x = OctonionField::identity();
        assert_eq!(cauchy_riemann_left(&x, &P).unwrap(), Octonion::real(-6.0));
        assert_eq!(cauchy_riemann_right(&x, &P).unwrap(), Octonion::real(-6.0));
        assert_eq!(inframonogenic_residual(&x, &P).unwrap(), Octonion::ZERO);
        // ∂ₓ̄x = 1 + 7
        assert_eq!(conjugate_cr(&x, &P).unwrap(), Octonion::real(8.0));
    }

    #[test]
    fn constants_are_annihilated() {
        let c = OctonionField::constant(Octonion::new([1.0, -2.0, 0.5, 3.0, 0.0, 1.0, 2.0, -1.0]));
        let zero = Octonion::ZERO;
        assert_eq!(cauchy_riemann_left(&c, &P).unwrap(), zero);
        assert_eq!(cauchy_riemann_right(&c, &P).unwrap(), zero);
        assert_eq!(dirac(&c, &P).unwrap(), zero);
        assert_eq!(factorization_residual(&c, &P).unwrap(), zero);
        assert_eq!(inframonogenic_residual(&c, &P).unwrap(), zero);
    }

    #[test]
    fn fueter_variable_is_monogenic_and_inframonogenic() {
        let f = fueter1();
        assert!(cauchy_riemann_left(&f, &P).unwrap().norm() <= 1e-12);
        assert!(cauchy_riemann_right(&f, &P).unwrap().norm() <= 1e-12);
        assert!(inframonogenic_residual(&f, &P).unwrap().norm() <= 1e-12);
    }

    #[test]
    fn left_and_right_agree_when_only_e0_couples() {
        // f₀ = x₁, f₁ = x₀
        let f = OctonionField::coordinate(1) + OctonionField::coordinate(0) * OctonionField::constant(e(1));
        let l = cauchy_riemann_left(&f, &P).unwrap();
        let r = cauchy_riemann_right(&f, &P).unwrap();
        assert!((l - r).norm() <= 1e-12);
        assert_eq!(l, e(1) * 2.0);
    }

    #[test]
    fn laplacian_and_factorization_of_norm_squared() {
        let f = OctonionField::norm_squared();
        assert_eq!(laplacian(&f, &P).unwrap(), Octonion::real(16.0));
        assert!(factorization_residual(&f, &P).unwrap().norm() <= 1e-12);
    }

    #[test]
    fn dirac_plus_x0_derivative_recombines() {
        let x = OctonionField::identity();
        let f = x.clone() * OctonionField::constant(e(3)) * x.clone() + x.component(5).sin();
        let jet = f.eval_jet(&P).unwrap();
        let recombined = jet.partial(0) + jet.dirac();
        assert!((recombined - jet.cauchy_riemann_left()).max_abs() <= 1e-14);
        let conj = jet.partial(0) - jet.dirac();
        assert!((conj - jet.conjugate_cauchy_riemann()).max_abs() <= 1e-14);
    }

    #[test]
    fn bracket_orders_of_the_inframonogenic_operator_agree() {
        let x = OctonionField::identity();
        let f = (x.clone() * OctonionField::constant(e(6))) * (x.clone() * OctonionField::constant(e(3)))
            + x.component(2).exp() * OctonionField::constant(e(5));
        let jet = f.eval_jet(&P).unwrap();
        let gap = (jet.inframonogenic() - jet.inframonogenic_right_first()).max_abs();
        assert!(gap <= 1e-12, "gap {gap}");
        assert!(jet.inframonogenic().norm() > 1e-3);
    }

    #[test]
    fn jets_match_finite_differences() {
        let x = OctonionField::identity();
        let f = (x.clone() * x.clone()).conj() * OctonionField::constant(e(4))
            + (x.component(3) * x.component(6)).cos()
            + x.component(1).exp() * OctonionField::constant(e(2));
        let (d1, d2) = fd::jet_deviation(&f, &P).unwrap();
        assert!(d1 <= 1e-6, "first {d1}");
        assert!(d2 <= 1e-4, "second {d2}");
    }

    #[test]
    fn singular_points_propagate() {
        let f = OctonionField::coordinate(2).recip();
        let mut x = P;
        x[2] = 0.0;
        assert!(cauchy_riemann_left(&f, &x).is_err());
    }
}
