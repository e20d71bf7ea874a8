//! Exact rational linear algebra: subspaces, coordinate frames, bracket
//! closures and Lie algebras presented by structure constants.

pub mod linalg;
mod lie;
mod space;

pub use lie::{bracket_closure, presentation_on_basis, quotient_presentation, LiePresentation};
pub use linalg::{Matrix, Vector};
pub use space::{Frame, Subspace};
