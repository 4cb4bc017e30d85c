use thiserror::Error;

/// Errors produced by the inference engine and the simulator.
#[derive(Debug, Error)]
pub enum Error {
    #[error("denominator is zero")]
    ZeroDenominator,

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid rational literal '{0}' (expected `num/den` or an integer)")]
    InvalidRational(String),

    #[error("negative weight in distribution")]
    NegativeWeight,

    #[error("distribution has zero total weight")]
    ZeroTotalWeight,

    #[error("conditioning event '{0}' has probability zero")]
    ZeroProbabilityCondition(String),

    #[error("partition must contain at least one event")]
    EmptyPartition,

    #[error("invalid naming model: {0}")]
    InvalidModel(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("unknown scenario '{0}'")]
    UnknownScenario(String),

    #[error("unsupported scenario: {0}")]
    UnsupportedScenario(String),

    #[error("parameter {0} does not fit the simulator's 64-bit integer sampling range")]
    ParameterTooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
