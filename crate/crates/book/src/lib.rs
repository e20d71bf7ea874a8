//! The guide in `book/src`, compiled so that every snippet runs as a doctest.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/quaternions.md")]
pub mod quaternions {}

#[doc = include_str!("../../../book/src/ambient.md")]
pub mod ambient {}

#[doc = include_str!("../../../book/src/generators.md")]
pub mod generators {}

#[doc = include_str!("../../../book/src/tila.md")]
pub mod tila {}

#[doc = include_str!("../../../book/src/catalog.md")]
pub mod catalog {}

#[doc = include_str!("../../../book/src/classification.md")]
pub mod classification {}

#[doc = include_str!("../../../book/src/torsion.md")]
pub mod torsion {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
