use thiserror::Error;

/// Errors raised by the exact-arithmetic layers and the checkers built on them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("depth mismatch: {0} vs {1}")]
    DepthMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent {0} is not integral; use eps_power_minus_one for q^a - 1")]
    NonIntegralExponent(String),
    #[error("depth {requested} exceeds the configured maximum {max}")]
    DepthOverflow { requested: u32, max: u32 },
    #[error("exponent {exponent} needs depth {needed} but the model has depth {depth}")]
    ExponentTooDeep {
        exponent: String,
        needed: u32,
        depth: u32,
    },
    #[error("singular matrix")]
    SingularMatrix,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
