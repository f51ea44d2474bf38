use thiserror::Error;

/// Everything that can go wrong while building, compressing or evaluating
/// distributions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("distribution needs at least one outcome")]
    EmptyInput,
    #[error("negative mass {mass} at outcome {outcome}")]
    NegativeMass { outcome: f64, mass: f64 },
    #[error("non-finite number in input at position {index}")]
    NonFinite { index: usize },
    #[error("total mass {total} is not within tolerance of 1")]
    NotNormalized { total: f64 },
    #[error(
        "outcomes and cumulative probabilities must be strictly increasing (position {index})"
    )]
    NonMonotone { index: usize },
    #[error("cumulative probability {value} at position {index} is outside (0, 1]")]
    OutOfRange { index: usize, value: f64 },
    #[error("epsilon must be non-negative, got {0}")]
    NegativeEpsilon(f64),
    #[error("support budget must be at least 1, got {0}")]
    InvalidBudget(usize),
    #[error("oracle enumeration is limited to {limit} support points, input has {n}")]
    TooLargeForOracle { n: usize, limit: usize },
    #[error("binary-search optimizer is capped at {cap} support points, input has {n}")]
    InputTooLarge { n: usize, cap: usize },
    #[error("result support would exceed the cap of {cap} points")]
    SupportOverflow { cap: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

impl Error {
    /// True for errors caused by a configured size cap rather than by bad data.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::TooLargeForOracle { .. }
                | Error::InputTooLarge { .. }
                | Error::SupportOverflow { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
