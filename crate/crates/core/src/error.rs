use thiserror::Error;

/// Errors raised by the library. Every variant names the precondition it
/// guards so the CLI can surface it verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ConstantTermInvalid: {0}")]
    ConstantTermInvalid(String),
    #[error("SingularDenominator: denominator matrix is not invertible at h = 0")]
    SingularDenominator,
    #[error("NonUnitDenominator: bead denominator must evaluate to +1 or -1 at t = 1, got {0}")]
    NonUnitDenominator(String),
    #[error("BeadObstruction: {0}")]
    BeadObstruction(String),
    #[error("NonUnitAtOne: det A(1) must be +1 or -1, got {0}")]
    NonUnitAtOne(String),
    #[error("SqrtObstruction: constant term {0} is not the square of a rational")]
    SqrtObstruction(String),
    #[error("SingularWeight: (alpha, lambda) = 0 for a positive root alpha")]
    SingularWeight,
    #[error("NotInvariant: character combination is not Weyl invariant")]
    NotInvariant,
    #[error("TauRequiresTrivialAlexander: tau needs polynomial beads and a matrix part with constant determinant")]
    TauRequiresTrivialAlexander,
    #[error("NotHermitian: entry (i, j) must equal entry (j, i) with t -> t^-1")]
    NotHermitian,
    #[error("InvalidDiagram: {0}")]
    InvalidDiagram(String),
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("InvalidAlgebra: {0}")]
    InvalidAlgebra(String),
}

impl Error {
    /// True for malformed input, false for well-formed input that violates
    /// a mathematical precondition.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
