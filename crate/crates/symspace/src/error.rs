//! Error type shared by every module of the crate.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode the library can report.
///
/// Domain errors carry a short human-readable context string; [`Error::name`]
/// returns the stable variant name used by the command-line front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("spec mismatch: {0}")]
    SpecMismatch(String),
    #[error("unsupported algebra specification: {0}")]
    UnsupportedSpec(String),
    #[error("element is singular (reciprocal condition {rcond:.3e})")]
    Singular { rcond: f64 },
    #[error("(algebra, involution) is not a Hermitian pair: {0}")]
    NotHermitianPair(String),
    #[error("element is not positive: {0}")]
    NotPositive(String),
    #[error("unknown imaginary unit: {0}")]
    UnknownUnit(String),
    #[error("matrix is not in the group: {0}")]
    NotInGroup(String),
    #[error("matrix is not in the Lie algebra: {0}")]
    NotInLieAlgebra(String),
    #[error("point is not in the model: {0}")]
    NotInModel(String),
    #[error("vector is not tangent: {0}")]
    NotTangent(String),
    #[error("Moebius denominator is singular")]
    SingularDenominator,
    #[error("vector is not regular: {0}")]
    NotRegular(String),
    #[error("point lies outside the chart domain: {0}")]
    NonTransverse(String),
    #[error("eigenline kernel has real dimension {found}, expected {expected}")]
    KernelRankMismatch { expected: usize, found: usize },
    #[error("finite-difference step too large: {0}")]
    StepTooLarge(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("Higgs vector violates its symmetry pattern: {0}")]
    NotPattern(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

impl Error {
    /// Stable identifier of the variant, independent of the message payload.
    pub fn name(&self) -> &'static str {
        match self {
            Error::SpecMismatch(_) => "SpecMismatch",
            Error::UnsupportedSpec(_) => "UnsupportedSpec",
            Error::Singular { .. } => "Singular",
            Error::NotHermitianPair(_) => "NotHermitianPair",
            Error::NotPositive(_) => "NotPositive",
            Error::UnknownUnit(_) => "UnknownUnit",
            Error::NotInGroup(_) => "NotInGroup",
            Error::NotInLieAlgebra(_) => "NotInLieAlgebra",
            Error::NotInModel(_) => "NotInModel",
            Error::NotTangent(_) => "NotTangent",
            Error::SingularDenominator => "SingularDenominator",
            Error::NotRegular(_) => "NotRegular",
            Error::NonTransverse(_) => "NonTransverse",
            Error::KernelRankMismatch { .. } => "KernelRankMismatch",
            Error::StepTooLarge(_) => "StepTooLarge",
            Error::Unsupported(_) => "Unsupported",
            Error::NotPattern(_) => "NotPattern",
            Error::ShapeMismatch(_) => "ShapeMismatch",
        }
    }
}
