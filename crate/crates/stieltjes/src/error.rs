use crate::ring::Domain;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain mismatch: {0} vs {1}")]
    DomainMismatch(Domain, Domain),
    #[error("constant term is not a unit in {0}")]
    NonUnitConstant(Domain),
    #[error("square root requires constant term 1")]
    SqrtConstant,
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("coefficients are not all integral")]
    NotIntegral,
    #[error("cannot convert coefficients from {0} to {1}")]
    UnsupportedConversion(Domain, Domain),
    #[error("degree {degree} does not fit in a series of order {order}")]
    DegreeOverflow { degree: usize, order: usize },
    #[error("sequence prefix too short: need {needed} values, have {have}")]
    PrefixTooShort { needed: usize, have: usize },
    #[error("unknown sequence `{0}`")]
    UnknownSequence(String),
    #[error("requested work {requested} exceeds the cap {cap}; set STIELTJES_MAX_WORK to raise it")]
    WorkCapExceeded { requested: u128, cap: u128 },
    #[error("invalid substitution system: {0}")]
    InvalidSystem(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("expansions of consecutive convergents disagree at x^{0}")]
    Stabilization(usize),
    #[error("independent square-root routes disagree at x^{0}")]
    RouteDisagreement(usize),
    #[error("{0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
