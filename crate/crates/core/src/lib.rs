pub mod catalog;
pub mod classify;
pub mod error;
pub mod quatlin;
pub mod rational;
pub mod sostar;
pub mod subspace;
pub mod tila;
pub mod torsion;

pub use error::{Error, Result};
