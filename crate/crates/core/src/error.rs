use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ground set: n must be at least 1")]
    InvalidGroundSet,

    #[error("ground-set mismatch: {left} vs {right} elements")]
    GroundSetMismatch { left: usize, right: usize },

    #[error("invalid atom {a}-{b} for n = {n}")]
    InvalidAtom { a: usize, b: usize, n: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("resource limit exceeded: {what} ({actual} > {limit})")]
    ResourceLimit {
        what: &'static str,
        limit: u128,
        actual: u128,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid bridge {a}-{b}: endpoints already share a block")]
    InvalidBridge { a: usize, b: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("pivot {a}-{b} is not a red atom")]
    InvalidPivot { a: usize, b: usize },

    #[error("not an atomic decomposition: {0}")]
    NotADecomposition(String),

    #[error("decomposition is not minimal")]
    NotMinimal,
}

impl Error {
    pub(crate) fn limit(
        what: &'static str,
        limit: impl Into<u128>,
        actual: impl Into<u128>,
    ) -> Self {
        Error::ResourceLimit {
            what,
            limit: limit.into(),
            actual: actual.into(),
        }
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}
