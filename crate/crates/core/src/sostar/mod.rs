//! The ambient algebra `so*(2n+4)` in block form, with its contact grading.
//!
//! Elements are `(n+2)×(n+2)` quaternionic matrices
//! `((a, Y*𝕛, d), (X, A, Y), (c, −X*𝕛, −a*))`. The grading puts `c` in degree
//! −2, `X` in −1, `(a, A)` in 0, `Y` in 1 and `d` in 2.

mod ambient;
mod form;

pub use ambient::{
    ambient_dim, ambient_membership, embed_minus_one, entry_grade, grade_project, graded_basis, graded_dims,
    hn_basis, j_full, levi_form, membership_residual, pseudo_hermitian_metrics, realified_bracket, sl2_triple,
    so_star_basis, AmbientElement, GradedParts,
};
pub use form::{FormVariant, SkewForm};
