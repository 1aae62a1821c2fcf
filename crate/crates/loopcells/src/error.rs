//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partitions have different totals: {0} vs {1}")]
    TotalMismatch(usize, usize),
    #[error("invalid parabolic descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid affine permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid root: {0}")]
    InvalidRoot(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not unimodular: {0}")]
    NonUnimodular(String),
    #[error("matrix support is not an affine permutation: {0}")]
    NonMonomial(String),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix does not lie in the required subgroup: {0}")]
    NotInSubgroup(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
