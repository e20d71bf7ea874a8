//! Jordan-block normal forms of `(a, A, d)`, the generator equation block by
//! block, and a grid scan matching every surviving class to the catalog.

mod family;
mod scan;

pub use family::{block_residual, block_residual_named, Family, FamilyKind};
pub use scan::{
    assemble, catalog_normal_form, classify_scan, grid_families, kind_multisets, match_tag, normalize, ClassOutcome,
    ClassifyReport, ExcludedHit, Grid, NormalizedTriple,
};
