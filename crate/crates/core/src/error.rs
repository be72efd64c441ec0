use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    /// Input data that is malformed: wrong shapes, dangling indices, d∘d ≠ 0.
    #[error("structural error: {0}")]
    Structural(String),
    #[error("not a closed manifold: {0}")]
    NotManifold(String),
    #[error("manifold is not orientable")]
    NonOrientable,
    #[error("representation is not flat: {0}")]
    NotFlat(String),
    #[error("Euler characteristic is {0}, Euler structures need 0")]
    NonzeroEuler(i64),
    #[error("flat volume form does not exist (det of monodromy is {0} along a loop)")]
    NotUnimodular(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

