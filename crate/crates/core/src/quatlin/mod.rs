//! Exact quaternion and quaternionic-matrix arithmetic.
//!
//! Every matrix in the crate lives here: the ambient `so*(2n+4)` elements,
//! the skew-Hermitian forms, and the generators. [`QMat::realify`] fixes the
//! coordinate system used by every subspace computation: the ordered basis
//! `(1, i, j, k)` per entry, entries in row-major order.

mod matrix;
mod quat;

pub use matrix::QMat;
pub use quat::{quat_mul, Quat};
