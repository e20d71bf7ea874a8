use thiserror::Error;

/// Errors raised by the construction and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("vectors of mixed ambient dimension ({expected} vs {found})")]
    MixedDimension { expected: usize, found: usize },

    #[error("could not parse rational {0:?}")]
    ParseRational(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("not an element of so*(2n+4) for the chosen form: {0}")]
    NotAmbient(String),

    #[error("T is not contained in S")]
    NotContained,

    #[error("not an ideal of S")]
    NotAnIdeal,

    #[error("symtest failed: {nonzero} of {total} basis residuals are nonzero")]
    SymtestFailed { nonzero: usize, total: usize },

    #[error("grading violated: [[m,m],m] is not contained in m")]
    GradingViolated,

    #[error("quotient ill-defined: [S, tau] != 0")]
    QuotientIllDefined,

    #[error("radical not solvable")]
    RadicalNotSolvable,

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("no ad-realization of the endomorphism I")]
    NoAdRealization,

    #[error("parameter constraint violated: {0}")]
    Constraint(String),

    #[error("unknown catalog tag {0:?}")]
    UnknownTag(String),

    #[error("bracket off-line at m-basis vector {index}: residual {residual}")]
    BracketOffLine { index: usize, residual: String },

    #[error("scale factor is irrational: sqrt({0})")]
    IrrationalScale(String),

    #[error("unknown normal-form family {0:?}")]
    UnknownFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;
