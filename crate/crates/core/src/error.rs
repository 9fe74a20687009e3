use thiserror::Error;

use crate::bits::BitWord;

/// Everything that can go wrong while building or evaluating rules.
///
/// Violations found by checkers (a node breaking the gale condition, a Kraft
/// sum over budget) are report content, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaleError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not a prefix set: {prefix} is a prefix of {word}")]
    NotPrefixSet { prefix: BitWord, word: BitWord },

    #[error("q = {q} is outside the admissible range ({expected})")]
    ExponentOutOfRange { q: String, expected: &'static str },

    #[error("mismatched rules: {0}")]
    Mismatch(String),

    #[error("evaluation outside the defined range: {0}")]
    OutOfRange(String),

    #[error("input violates its supergale contract at {word}: {detail}")]
    ContractViolation { word: BitWord, detail: String },

    #[error("no admissible block after {position} bits: {detail}")]
    NoAdmissibleBlock { position: usize, detail: String },

    #[error("sequence source exhausted at bit {0}")]
    SourceExhausted(usize),

    #[error("description: {0}")]
    Description(String),

    #[error("grid anomaly: {0}")]
    GridAnomaly(String),
}

pub type Result<T, E = GaleError> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> GaleError {
    GaleError::InvalidParameter(msg.into())
}
