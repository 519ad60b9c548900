use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("illegal Cartan type {family}{rank}")]
    IllegalType { family: char, rank: usize },

    #[error("a Cartan type needs at least one component")]
    EmptyType,

    #[error("cannot parse Cartan type {0:?}")]
    ParseType(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unknown automorphism generator {0:?}")]
    UnknownGenerator(String),

    #[error("characteristic must be 0 or a prime, got {0}")]
    InvalidCharacteristic(u64),

    #[error("{size} candidate nodes exceed the subset cap of {cap}; raise the cap to continue")]
    SubsetCapExceeded { size: usize, cap: usize },

    #[error("marks are not constant on the component {component} part of {omega}")]
    MixedMarks { omega: String, component: usize },

    #[error("{0} is not in Q(G)_p'")]
    NotQuasiIsolatedSet(String),

    #[error("node set does not induce a finite-type diagram: {0}")]
    UnrecognizedSubdiagram(String),

    #[error("Weyl group of order {estimate} exceeds the enumeration cap of {cap}")]
    WeylCapExceeded { estimate: u128, cap: u128 },

    #[error("the root system has {0} roots; permutation storage supports at most 256")]
    TooManyRoots(usize),

    #[error("{points} alcove points exceed the search cap of {cap}")]
    PointCapExceeded { points: u128, cap: u128 },
}
