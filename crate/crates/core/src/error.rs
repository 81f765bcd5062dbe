use thiserror::Error;

use crate::ga::Signature;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid signature ({p},{q}): need 1 <= p + q <= {max}")]
    InvalidSignature { p: usize, q: usize, max: usize },

    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: Signature, right: Signature },

    #[error("basis blade mask {mask:#b} does not fit in dimension {dim}")]
    BladeOutOfRange { mask: u32, dim: usize },

    #[error("element {index} is not a grade-1 vector")]
    NotAVector { index: usize },

    #[error("cannot wedge {count} vectors in dimension {dim}")]
    TooManyVectors { count: usize, dim: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("blade is zero")]
    ZeroBlade,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("length {0} is not a triangular number n(n+1)/2 with n >= 2")]
    NotTriangular(usize),

    #[error("point is not in the affine chart (homogenizing coordinate is {0})")]
    NotAffine(f64),

    #[error("zero vector has no projective class")]
    ZeroVector,

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("ambiguous fit: incidence system has rank {rank}, need {needed}")]
    Ambiguous { rank: usize, needed: usize },

    #[error("conic has no quadratic part")]
    ZeroQuadraticPart,

    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),

    #[error("decision normalizer vanishes (flat or degenerate sphere)")]
    VanishingNormalizer,

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("training diverged at epoch {epoch}: loss is not finite")]
    Diverged { epoch: usize },

    #[error("sample budget of {budget} draws exhausted before both classes were filled")]
    BudgetExhausted { budget: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for failures that come from the numbers rather than from the
    /// request (degenerate geometry, divergence, ambiguity).
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Degenerate(_)
                | Error::Ambiguous { .. }
                | Error::ZeroQuadraticPart
                | Error::VanishingNormalizer
                | Error::Diverged { .. }
                | Error::BudgetExhausted { .. }
                | Error::ZeroBlade
                | Error::ZeroVector
        )
    }
}
