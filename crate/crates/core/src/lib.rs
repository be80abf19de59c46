//! Octonionic analysis toolkit.
//!
//! The crate builds the octonions from the Cayley–Dickson product over
//! quaternion pairs and layers function theory on top of it:
//!
//! - [`algebra`]: octonion, quaternion and complex arithmetic, involutions,
//!   projections and the derived multiplication table;
//! - [`forms`]: the real, complex and quaternionic bilinear forms and
//!   sampled invariance checks over 8×8 linear maps;
//! - [`jet`], [`field`], [`operators`]: second-order forward-mode
//!   differentiation of octonion-valued fields on R⁸ and the left/right
//!   Cauchy–Riemann, Dirac, Laplace and inframonogenic operators;
//! - [`systems`]: the real 8×8, complex 4×4 and quaternionic
//!   reformulations of `∂ₓf = 0` as residual evaluators;
//! - [`solutions`]: Fueter-type fixtures and the biaxial family driven by
//!   a holomorphic seed;
//! - [`integral`]: a Monte Carlo verifier for the octonionic Cauchy
//!   integral formula on spheres in R⁸;
//! - [`suites`], [`report`], [`cli`]: the seeded verification suites behind
//!   the `octo-cr` binary.
//!
//! ```
//! use octo_cr::algebra::Octonion;
//!
//! let e1 = Octonion::basis(1);
//! let e2 = Octonion::basis(2);
//! let e4 = Octonion::basis(4);
//! assert_eq!((e1 * e2) * e4, Octonion::basis(7));
//! assert_eq!(e1 * (e2 * e4), -Octonion::basis(7));
//! ```

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cli;
mod error;
pub mod field;
pub mod forms;
pub mod generators;
pub mod integral;
pub mod jet;
pub mod operators;
pub mod report;
pub mod rng;
pub mod solutions;
pub mod suites;
pub mod systems;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book;
