use thiserror::Error;

use crate::partition::Theory;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("part `{0}` is not positive")]
    NonPositive(String),
    #[error("sequence is not weakly decreasing at `{0}`")]
    NotDescending(String),
    #[error("unknown theory `{0}` (expected B, C or D)")]
    UnknownTheory(String),
    #[error("partition {partition} is not a {theory}-type partition")]
    NotInTheory { partition: String, theory: Theory },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("block decomposition needs an interleaved partition")]
    RequiresInterleave,
}
