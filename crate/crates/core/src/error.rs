use thiserror::Error;

use crate::preference::VoterId;

/// Errors raised by the in-process API.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alternative index {index} is out of range for a universe of {m} alternatives")]
    Index { index: usize, m: usize },

    #[error("preference is cyclic: closure would rank alternative {alternative} above itself")]
    Cycle { alternative: usize },

    #[error("{what} of {requested} exceeds the configured limit of {limit}")]
    Resource {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    #[error("universe of {m} alternatives exceeds the supported maximum of {max}")]
    TooManyAlternatives { m: usize, max: usize },

    #[error("voter ids must be positive")]
    ZeroVoterId,

    #[error("voter {0} appears more than once")]
    DuplicateVoter(VoterId),

    #[error("profiles share voter {0}")]
    Overlap(VoterId),

    #[error("arity mismatch: expected {expected} alternatives, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("a profile needs at least one voter")]
    EmptyProfile,

    #[error("approval set must be a nonempty proper subset of the alternatives")]
    DegenerateBallot,

    #[error("invalid weights: {0}")]
    Weight(String),

    #[error("affine scale factor must be positive")]
    Alpha,

    #[error("not a permutation of 0..{0}")]
    Permutation(usize),

    #[error("voter {0} did not submit an approval ballot")]
    Domain(VoterId),

    #[error("invalid check configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
