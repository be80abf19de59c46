// Book chapters compiled as doctests; every ```rust block in book/src must
// build and pass against the current API.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/octonions.md")]
pub mod octonions {}
#[doc = include_str!("../../../book/src/forms.md")]
pub mod forms {}
#[doc = include_str!("../../../book/src/operators.md")]
pub mod operators {}
#[doc = include_str!("../../../book/src/systems.md")]
pub mod systems {}
#[doc = include_str!("../../../book/src/solutions.md")]
pub mod solutions {}
#[doc = include_str!("../../../book/src/integral.md")]
pub mod integral {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
