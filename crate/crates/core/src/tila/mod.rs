//! Transvection algebras `g = ([m,m]/t) ⊕ m` built from a generator `τ`, and
//! the checks that make them quaternionic skew-Hermitian.

mod build;
mod tau;
mod verify;

pub use build::{build_m, build_tila, levi_gram, quaternionic_structure, MBasis, Tila};
pub use tau::{m_element, symtest, SymtestReport, TauElement};
pub use verify::{
    ambient_trace_form_on_m, central_element_analysis, l_equals_mm, levi_structure, omega_is_cocycle,
    q0_is_l_invariant, q0_is_quaternionic, sigma_is_automorphism, verification_record, verify_axioms,
    AxiomReport, BlockCategory, BlockLayout, CentralElement, KillingSummary, LeviReport, TraceFormReport,
    VerificationRecord,
};
