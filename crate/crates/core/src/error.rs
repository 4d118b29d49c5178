use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("matrix is singular over the fraction field")]
    SingularMatrix,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("KL cache is corrupt: {0}")]
    CacheCorrupt(String),

    #[error("invariant form is not unique: solution space has dimension {nullity}")]
    NonUniqueForm { nullity: usize },

    #[error("not a right cell: {0}")]
    NotACell(String),

    #[error("neither the P- nor the Q-tableau grouping reproduces the mu-graph cells for n = {n}")]
    ConventionMismatch { n: usize },

    #[error("bar involution is not length-triangular: {0}")]
    TriangularityViolation(String),

    #[error("statistic span is not a submodule: {0}")]
    NotSubmodule(String),

    #[error("layer character does not decompose into irreducible characters: {0}")]
    CharacterDecomposition(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn size(msg: impl Into<String>) -> Self {
        Error::SizeMismatch(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
