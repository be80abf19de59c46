//! The complex 4×4 system.
//!
//! Coordinates and values are split as `x = z₁ + z₂e₂ + (z₃ + z₄e₂)e₄` with
//! `z_k = x_{2k−2} + x_{2k−1}e₁`, so the complex slot `k` holds the real
//! components `2k−2` and `2k−1`. The operators are
//! `∂_{z_k} = ∂_{x_{2k−2}} + e₁∂_{x_{2k−1}}` and `∂_{z̄_k} = ∂_{x_{2k−2}} − e₁∂_{x_{2k−1}}`.

use serde::Deserialize;

use super::{diff_signed_terms, ResidualComponents, SystemId, SystemMismatch, SystemResidual};
use crate::algebra::{structure_table, Complex};
use crate::field::{OctonionField, OctonionJet2};
use crate::{Error, Result};

const PUBLISHED_COMPLEX_SYSTEM: &str = include_str!("../../fixtures/complex_system.json");

/// `sign · ∂_{z_operator}(f_function)` with optional conjugations, slots
/// numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplexTerm {
    pub sign: i8,
    pub operator: usize,
    pub conjugate_operator: bool,
    pub function: usize,
    pub conjugate_function: bool,
}

impl ComplexTerm {
    pub fn label(&self) -> String {
        format!(
            "dz{}{}(f{}{})",
            if self.conjugate_operator { "bar" } else { "" },
            self.operator,
            self.function,
            if self.conjugate_function { "bar" } else { "" }
        )
    }

    fn parse(token: &str) -> Result<Self> {
        let bad = || Error::Fixture(format!("bad complex-system term {token:?}"));
        let (sign, rest) = match token.as_bytes().first() {
            Some(b'+') => (1, &token[1..]),
            Some(b'-') => (-1, &token[1..]),
            _ => return Err(bad()),
        };
        let rest = rest.strip_prefix("dz").ok_or_else(bad)?;
        let (conjugate_operator, rest) = match rest.strip_prefix("bar") {
            Some(r) => (true, r),
            None => (false, rest),
        };
        let (op, rest) = rest.split_once("(f").ok_or_else(bad)?;
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        let (func, conjugate_function) = match inner.strip_suffix("bar") {
            Some(r) => (r, true),
            None => (inner, false),
        };
        let slot = |s: &str| s.parse::<usize>().ok().filter(|k| (1..=4).contains(k)).ok_or_else(bad);
        Ok(Self { sign, operator: slot(op)?, conjugate_operator, function: slot(func)?, conjugate_function })
    }

    /// Real coefficients of the term on `(∂ₑf_re, ∂ₑf_im, ∂ₒf_re, ∂ₒf_im)`
    /// for the real and imaginary output, where `e`/`o` are the even and odd
    /// coordinates of the operator slot.
    fn block(&self) -> [[i8; 4]; 2] {
        let s = if self.conjugate_operator { -1 } else { 1 };
        let t = if self.conjugate_function { -1 } else { 1 };
        let g = self.sign;
        [[g, 0, 0, -g * s * t], [0, g * t, g * s, 0]]
    }

    fn apply(&self, jet: &OctonionJet2) -> Complex {
        let even = 2 * (self.operator - 1);
        let re = 2 * (self.function - 1);
        let d = |i: usize, c: usize| jet.components[c].grad[i];
        let inputs = [d(even, re), d(even, re + 1), d(even + 1, re), d(even + 1, re + 1)];
        let [b_re, b_im] = self.block();
        let dot = |b: [i8; 4]| b.iter().zip(inputs).map(|(c, v)| f64::from(*c) * v).sum::<f64>();
        Complex::new(dot(b_re), dot(b_im))
    }
}

#[derive(Deserialize)]
struct SystemFile {
    equations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexSystem {
    pub equations: Vec<Vec<ComplexTerm>>,
}

impl ComplexSystem {
    /// Build the system by reading each 2×4 coupling block between an
    /// operator slot, a function slot and an output slot off the structure
    /// table and matching it to one of the eight signed term shapes.
    pub fn generate() -> Result<Self> {
        let table = structure_table();
        let mut equations = vec![Vec::new(); 4];
        for (k, equation) in equations.iter_mut().enumerate() {
            for op in 0..4 {
                for func in 0..4 {
                    let mut block = [[0i8; 4]; 2];
                    for (di, i) in [2 * op, 2 * op + 1].into_iter().enumerate() {
                        for (dj, j) in [2 * func, 2 * func + 1].into_iter().enumerate() {
                            let p = table.get(i, j);
                            let idx = p.index as usize;
                            if idx / 2 == k {
                                block[idx % 2][2 * di + dj] += p.sign;
                            }
                        }
                    }
                    if block == [[0; 4]; 2] {
                        continue;
                    }
                    let term = Self::match_block(block, op + 1, func + 1)
                        .ok_or_else(|| Error::Fixture(format!("coupling block {block:?} has no complex form")))?;
                    equation.push(term);
                }
            }
        }
        Ok(Self { equations })
    }

    fn match_block(block: [[i8; 4]; 2], operator: usize, function: usize) -> Option<ComplexTerm> {
        for sign in [1, -1] {
            for conjugate_operator in [false, true] {
                for conjugate_function in [false, true] {
                    let term = ComplexTerm { sign, operator, conjugate_operator, function, conjugate_function };
                    if term.block() == block {
                        return Some(term);
                    }
                }
            }
        }
        None
    }

    /// The checked-in transcription of the published display.
    pub fn published() -> Result<Self> {
        Self::from_json(PUBLISHED_COMPLEX_SYSTEM)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SystemFile = serde_json::from_str(text).map_err(|e| Error::Fixture(e.to_string()))?;
        let equations = file
            .equations
            .iter()
            .map(|eq| eq.split_whitespace().map(ComplexTerm::parse).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { equations })
    }

    fn signed_labels(&self) -> Vec<Vec<(String, i8)>> {
        self.equations.iter().map(|eq| eq.iter().map(|t| (t.label(), t.sign)).collect()).collect()
    }

    pub fn diff(&self, transcribed: &Self) -> Vec<SystemMismatch> {
        diff_signed_terms(&self.signed_labels(), &transcribed.signed_labels())
    }

    pub fn evaluate(&self, jet: &OctonionJet2) -> Vec<Complex> {
        self.equations.iter().map(|eq| eq.iter().fold(Complex::new(0.0, 0.0), |acc, t| acc + t.apply(jet))).collect()
    }

    pub fn render(&self) -> String {
        const SUB: [char; 5] = ['₀', '₁', '₂', '₃', '₄'];
        let mut out = String::new();
        for eq in &self.equations {
            for (n, t) in eq.iter().enumerate() {
                let op = match (n, t.sign < 0) {
                    (0, false) => "",
                    (0, true) => "−",
                    (_, false) => " + ",
                    (_, true) => " − ",
                };
                let z = if t.conjugate_operator { "z̄" } else { "z" };
                let f = if t.conjugate_function { "f̄" } else { "f" };
                out.push_str(&format!("{op}∂{z}{}{f}{}", SUB[t.operator], SUB[t.function]));
            }
            out.push_str(" = 0\n");
        }
        out
    }
}

pub fn complex_system_residual(f: &OctonionField, x: &[f64; 8]) -> Result<SystemResidual> {
    let jet = f.eval_jet(x)?;
    complex_system_from_jet(&jet)
}

pub(crate) fn complex_system_from_jet(jet: &OctonionJet2) -> Result<SystemResidual> {
    use std::sync::OnceLock;
    static SYSTEM: OnceLock<std::result::Result<ComplexSystem, Error>> = OnceLock::new();
    let system = SYSTEM.get_or_init(ComplexSystem::generate).as_ref().map_err(Clone::clone)?;
    Ok(SystemResidual::new(SystemId::Complex, ResidualComponents::Complex(system.evaluate(jet))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Octonion;
    use crate::systems::real::real_system_residual;

    const P: [f64; 8] = [0.2, -0.3, 0.1, 0.45, -0.12, 0.33, -0.27, 0.05];

    #[test]
    fn generated_system_matches_the_transcription() {
        let generated = ComplexSystem::generate().unwrap();
        assert_eq!(generated.equations.len(), 4);
        assert!(generated.equations.iter().all(|eq| eq.len() == 4));
        assert_eq!(generated.diff(&ComplexSystem::published().unwrap()), vec![]);
    }

    #[test]
    fn terms_round_trip_through_labels() {
        for eq in &ComplexSystem::generate().unwrap().equations {
            for t in eq {
                let token = format!("{}{}", if t.sign > 0 { '+' } else { '-' }, t.label());
                assert_eq!(ComplexTerm::parse(&token).unwrap(), *t);
            }
        }
        assert!(ComplexTerm::parse("+dz5(f1)").is_err());
        assert!(ComplexTerm::parse("dz1(f1)").is_err());
    }

    #[test]
    fn repacks_the_real_residuals() {
        let x = OctonionField::identity();
        let f = x.clone() * OctonionField::constant(Octonion::basis(3)) * x.clone() + x.component(6).exp();
        let real = real_system_residual(&f, &P).unwrap();
        let complex = complex_system_residual(&f, &P).unwrap();
        let r = real.reals().unwrap();
        for (k, z) in complex.complexes().unwrap().iter().enumerate() {
            assert!((z.re - r[2 * k]).abs() <= 1e-12);
            assert!((z.im - r[2 * k + 1]).abs() <= 1e-12);
        }
    }

    #[test]
    fn fueter_field_is_annihilated() {
        let f =
            OctonionField::coordinate(5) - OctonionField::coordinate(0) * OctonionField::constant(Octonion::basis(5));
        assert!(complex_system_residual(&f, &P).unwrap().max_norm <= 1e-12);
    }

    #[test]
    fn rendering_has_four_lines() {
        let text = ComplexSystem::generate().unwrap().render();
        assert_eq!(text.lines().count(), 4);
        assert!(text.starts_with("∂z₁f₁"));
    }
}
