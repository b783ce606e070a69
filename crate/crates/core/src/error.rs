use thiserror::Error;

use crate::machinery::LemmaViolation;

/// Errors produced by the library. The CLI maps each variant to a stable exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("window of length {len} is shorter than the required {required}")]
    WindowTooShort { len: u32, required: u32 },

    #[error("{alpha} does not lie in any band of T")]
    NotInT { alpha: u32 },

    #[error("unsupported regime for (k, m) = ({k}, {m}); only k = 1 or m = 1 is proved")]
    UnsupportedRegime { k: u32, m: u32 },

    #[error("wrong regime: {0}")]
    WrongRegime(String),

    #[error(transparent)]
    Lemma(#[from] LemmaViolation),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
