use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-invertible constant term")]
    NonInvertibleConstant,

    #[error("non-integral closed form at n={n}: {value}")]
    NonIntegral { n: usize, value: String },

    #[error("k out of formula range: k={k} (formula requires k >= {min})")]
    KOutOfRange { k: usize, min: usize },

    #[error("probability out of range: p={0} (expected 0 < p <= 1)")]
    InvalidProbability(String),

    #[error("operation requires 0 < p < 1, got p={0}")]
    DegenerateProbability(String),

    #[error("no printed variance formula for statistic {0}")]
    NoVarianceFormula(&'static str),

    #[error("cannot parse rational number from {0:?}")]
    ParseRational(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
