//! The real 8×8 system and the Riesz system.

use serde::Deserialize;

use super::{diff_signed_terms, ResidualComponents, SystemId, SystemMismatch, SystemResidual};
use crate::algebra::structure_table;
use crate::field::{OctonionField, OctonionJet2};
use crate::{Error, Result};

const PUBLISHED_REAL_SYSTEM: &str = include_str!("../../fixtures/real_system.json");

/// `sign · ∂_{x_derivative} f_component`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RealTerm {
    pub sign: i8,
    pub derivative: usize,
    pub component: usize,
}

impl RealTerm {
    pub fn label(&self) -> String {
        format!("d{}f{}", self.derivative, self.component)
    }

    fn parse(token: &str) -> Result<Self> {
        let bad = || Error::Fixture(format!("bad real-system term {token:?}"));
        let (sign, rest) = match token.as_bytes().first() {
            Some(b'+') => (1, &token[1..]),
            Some(b'-') => (-1, &token[1..]),
            _ => return Err(bad()),
        };
        let b = rest.as_bytes();
        if b.len() != 4 || b[0] != b'd' || b[2] != b'f' {
            return Err(bad());
        }
        let digit = |c: u8| (c as char).to_digit(10).filter(|d| *d < 8).map(|d| d as usize);
        Ok(Self { sign, derivative: digit(b[1]).ok_or_else(bad)?, component: digit(b[3]).ok_or_else(bad)? })
    }
}

#[derive(Deserialize)]
struct SystemFile {
    equations: Vec<String>,
}

/// Equation `k` collects the terms `±∂ᵢfⱼ` with `eᵢeⱼ = ±e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealSystem {
    pub equations: Vec<Vec<RealTerm>>,
}

impl RealSystem {
    pub fn generate() -> Self {
        let table = structure_table();
        let mut equations = vec![Vec::new(); 8];
        for i in 0..8 {
            for j in 0..8 {
                let p = table.get(i, j);
                equations[p.index as usize].push(RealTerm { sign: p.sign, derivative: i, component: j });
            }
        }
        Self { equations }
    }

    /// The checked-in transcription of the published display.
    pub fn published() -> Result<Self> {
        Self::from_json(PUBLISHED_REAL_SYSTEM)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SystemFile = serde_json::from_str(text).map_err(|e| Error::Fixture(e.to_string()))?;
        let equations = file
            .equations
            .iter()
            .map(|eq| eq.split_whitespace().map(RealTerm::parse).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { equations })
    }

    /// Coefficient of `∂ᵢfⱼ` (at index `8i + j`) in each equation.
    pub fn coefficient_matrix(&self) -> Vec<[i8; 64]> {
        self.equations
            .iter()
            .map(|eq| {
                let mut row = [0i8; 64];
                for t in eq {
                    row[8 * t.derivative + t.component] += t.sign;
                }
                row
            })
            .collect()
    }

    fn signed_labels(&self) -> Vec<Vec<(String, i8)>> {
        self.equations.iter().map(|eq| eq.iter().map(|t| (t.label(), t.sign)).collect()).collect()
    }

    /// Terms of `transcribed` that differ from `self`.
    pub fn diff(&self, transcribed: &Self) -> Vec<SystemMismatch> {
        diff_signed_terms(&self.signed_labels(), &transcribed.signed_labels())
    }

    pub fn evaluate(&self, jet: &OctonionJet2) -> Vec<f64> {
        self.equations
            .iter()
            .map(|eq| eq.iter().map(|t| f64::from(t.sign) * jet.components[t.component].grad[t.derivative]).sum())
            .collect()
    }

    /// One line per equation, e.g. `∂₀f₀ − ∂₁f₁ − … = 0`.
    pub fn render(&self) -> String {
        const SUB: [char; 8] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇'];
        let mut out = String::new();
        for eq in &self.equations {
            for (n, t) in eq.iter().enumerate() {
                let op = match (n, t.sign < 0) {
                    (0, false) => "",
                    (0, true) => "−",
                    (_, false) => " + ",
                    (_, true) => " − ",
                };
                out.push_str(&format!("{op}∂{}f{}", SUB[t.derivative], SUB[t.component]));
            }
            out.push_str(" = 0\n");
        }
        out
    }
}

pub fn real_system_residual(f: &OctonionField, x: &[f64; 8]) -> Result<SystemResidual> {
    let jet = f.eval_jet(x)?;
    Ok(real_system_from_jet(&jet))
}

pub(crate) fn real_system_from_jet(jet: &OctonionJet2) -> SystemResidual {
    use std::sync::OnceLock;
    static SYSTEM: OnceLock<RealSystem> = OnceLock::new();
    let system = SYSTEM.get_or_init(RealSystem::generate);
    SystemResidual::new(SystemId::Real, ResidualComponents::Real(system.evaluate(jet)))
}

/// Residuals `∂₀f₀ − Σᵢ∂ᵢfᵢ`, then `∂₀fᵢ + ∂ᵢf₀` for `i = 1..7`, then
/// `∂ᵢfⱼ − ∂ⱼfᵢ` for `1 ≤ i < j ≤ 7` (29 in total).
pub fn riesz_system_residual(f: &OctonionField, x: &[f64; 8]) -> Result<SystemResidual> {
    let jet = f.eval_jet(x)?;
    let d = |i: usize, j: usize| jet.components[j].grad[i];
    let mut out = Vec::with_capacity(29);
    out.push(d(0, 0) - (1..8).map(|i| d(i, i)).sum::<f64>());
    out.extend((1..8).map(|i| d(0, i) + d(i, 0)));
    for i in 1..8 {
        for j in i + 1..8 {
            out.push(d(i, j) - d(j, i));
        }
    }
    Ok(SystemResidual::new(SystemId::Riesz, ResidualComponents::Real(out)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Octonion;

    const P: [f64; 8] = [0.2, -0.3, 0.1, 0.45, -0.12, 0.33, -0.27, 0.05];

    #[test]
    fn first_equation_coefficients() {
        let sys = RealSystem::generate();
        let row = &sys.coefficient_matrix()[0];
        let diag: Vec<i8> = (0..8).map(|i| row[9 * i]).collect();
        assert_eq!(diag, vec![1, -1, -1, -1, -1, -1, -1, -1]);
        assert_eq!(row.iter().filter(|c| **c != 0).count(), 8);
    }

    #[test]
    fn identity_field_residual() {
        let r = real_system_residual(&OctonionField::identity(), &P).unwrap();
        assert_eq!(r.reals().unwrap(), &[-6.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(r.max_norm, 6.0);
    }

    #[test]
    fn constant_field_residual() {
        let c = OctonionField::constant(Octonion::new([1.0; 8]));
        assert_eq!(real_system_residual(&c, &P).unwrap().max_norm, 0.0);
        assert_eq!(riesz_system_residual(&c, &P).unwrap().max_norm, 0.0);
    }

    #[test]
    fn transcription_differs_only_in_the_e2_equation() {
        let diff = RealSystem::generate().diff(&RealSystem::published().unwrap());
        assert_eq!(diff, vec![SystemMismatch { equation: 2, term: "d7f5".into(), generated: -1, transcribed: 1 }]);
    }

    #[test]
    fn riesz_pair_from_a_harmonic_gradient() {
        // φ = x₀² − x₁², f = ∂₀φ − Σ eᵢ∂ᵢφ = 2x₀ + 2x₁e₁
        let f = OctonionField::coordinate(0) * 2.0
            + OctonionField::coordinate(1) * OctonionField::constant(Octonion::basis(1) * 2.0);
        let r = riesz_system_residual(&f, &P).unwrap();
        assert_eq!(r.reals().unwrap().len(), 29);
        assert!(r.max_norm <= 1e-12);
    }

    #[test]
    fn parse_errors() {
        assert!(RealTerm::parse("d0f0").is_err());
        assert!(RealTerm::parse("+d9f0").is_err());
        assert!(RealTerm::parse("+x0f0").is_err());
        assert_eq!(RealTerm::parse("-d3f7").unwrap(), RealTerm { sign: -1, derivative: 3, component: 7 });
    }

    #[test]
    fn rendering() {
        let text = RealSystem::generate().render();
        assert!(text.starts_with("∂₀f₀ − ∂₁f₁ − ∂₂f₂"));
        assert_eq!(text.lines().count(), 8);
    }
}
