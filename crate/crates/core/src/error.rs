use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    /// A conditional metric was requested but its conditioning event never
    /// occurred in the batch.
    #[error("metric `{metric}` has an empty conditioning event")]
    EmptyDenominator { metric: String },

    #[error("quadrature did not converge: error estimate {estimate:e} > target {target:e} after {subdivisions} subdivisions")]
    ToleranceNotMet {
        estimate: f64,
        target: f64,
        subdivisions: usize,
    },

    #[error("config key `{key}`: {reason}")]
    Config { key: String, reason: String },

    #[error("unknown figure recipe `{0}` (expected fig1..fig5)")]
    UnknownRecipe(String),
}

pub type Result<T> = std::result::Result<T, Error>;
