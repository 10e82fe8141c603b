use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid coupling: {0}")]
    InvalidCoupling(String),

    #[error("initial state has {got} components, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("initial state component {index} = {value} lies outside [-1, 1]")]
    InvalidState { index: usize, value: f64 },

    /// A component left `[-1 - 2^-40, 1 + 2^-40]` or became non-finite.
    #[error("numerical corruption at step {step}: component {index} = {value}")]
    Corrupted { step: u64, index: usize, value: f64 },

    #[error("invalid sampler: {0}")]
    InvalidSampler(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("value {0} outside [-1, 1]")]
    OutOfRange(f64),

    #[error("partitions differ ({0} vs {1} boxes)")]
    PartitionMismatch(usize, usize),

    #[error("estimate undefined: {0}")]
    UndefinedEstimate(&'static str),

    #[error("minimum gap needs at least two samples, got {0}")]
    UndefinedGap(usize),

    #[error("invalid experiment: {0}")]
    InvalidExperiment(String),

    #[error("resource guard: {needed} histogram counters requested, budget is {budget}")]
    ResourceGuard { needed: u64, budget: u64 },
}
