use thiserror::Error;

/// Errors raised by the constructors and operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("rank {0} exceeds the supported maximum of {max}", max = crate::weyl::MAX_ROOTSET_RANK)]
    RankTooLarge(usize),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("Levi rank m = {m} is out of range for n = {n}")]
    LeviRank { n: usize, m: usize },
    #[error("root {0} is not a positive noncompact root")]
    NotNoncompactPositive(String),
    #[error("coordinates {0} do not describe a root of type C")]
    NotARoot(String),
    #[error("{0}")]
    Range(String),
    #[error("invalid signed permutation: {0}")]
    InvalidSignedPermutation(String),
    #[error("rank {0} is odd, an even rank is required")]
    OddRank(usize),
    #[error("row lengths sum to {rows} but the signature requires {expected}")]
    InconsistentTotals { rows: usize, expected: usize },
    #[error("convention check failed: {0}")]
    Convention(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
