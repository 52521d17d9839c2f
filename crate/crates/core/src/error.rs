use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty signal")]
    EmptySignal,
    #[error("signal is not normalized (offset 0, nonzero end points required)")]
    NotNormalized,
    #[error("support of the signal is not contained in the multiplier support")]
    SupportMismatch,
    #[error("value is not unimodular: {0}")]
    NotUnimodular(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("set too large: {size} elements (cap {cap})")]
    SetTooLarge { size: usize, cap: usize },
    #[error("genericity required")]
    NotGeneric,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("pulse width must satisfy 0 < eta <= 1/2, got {0}")]
    PulseWidth(String),
    #[error("empty range")]
    EmptyRange,
    #[error("root finding failed: {0}")]
    RootFinding(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
