use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("collection empty for n = {n}")]
    EmptyCollection { n: usize },

    #[error("no evaluation points in [{a}, {b}]")]
    NoEvaluationPoints { a: f64, b: f64 },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("invalid sample: {0}")]
    InvalidSample(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
