use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCount { left: usize, right: usize },

    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    VarIndex { index: usize, nvars: usize },

    #[error("not a monomial: {0}")]
    NotMonomial(String),

    #[error("not a unit: {0}")]
    NotUnit(String),

    #[error("coefficient outside the chart ring: {0}")]
    OutsideRing(String),

    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),

    #[error("unknown chart `{0}`")]
    UnknownChart(String),

    #[error("cocycle data does not span the atlas: {0}")]
    NotSpanning(String),

    #[error("atlas mismatch: {0}")]
    AtlasMismatch(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation failed: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
