use thiserror::Error;

use crate::sft::Edge;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by front ends to choose an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Malformed or inconsistent input data.
    Input,
    /// The input is well formed but violates a mathematical precondition.
    Precondition,
    /// An enumeration cap or size limit was exhausted.
    Limit,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry ({row}, {col}) is negative")]
    NegativeEntry { row: usize, col: usize },
    #[error("duplicate state label {0:?}")]
    DuplicateLabel(String),
    #[error("entry ({row}, {col}) is too large to enumerate edges")]
    EntryTooLarge { row: usize, col: usize },
    #[error("matrix is not 0-1: entry ({row}, {col}) exceeds 1")]
    NotZeroOne { row: usize, col: usize },
    #[error("presentation is empty")]
    EmptyPresentation,
    #[error("state {state} has no follower or no predecessor")]
    NotEssential { state: usize },
    #[error("presentation is not irreducible")]
    NotIrreducible,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("group closure exceeded limit of {limit} elements")]
    GroupLimitExceeded { limit: usize },
    #[error("action violates invariance: element {element} gives A({i},{j}) != A(g{i},g{j})")]
    InvarianceViolated { element: usize, i: usize, j: usize },
    #[error("reduced entry depends on the orbit representative at orbit pair ({from}, {to})")]
    RepresentativeDependence { from: usize, to: usize },
    #[error("enumeration cap of {cap} objects exceeded")]
    CapExceeded { cap: usize },
    #[error("polynomial list contains the zero polynomial")]
    ZeroPolynomial,
    #[error("strong shift equivalence check failed: {0}")]
    SseFailed(String),
    #[error("entry ({i}, {j}) of A is realised through {count} intermediate states, expected exactly one")]
    NotUniqueState { i: usize, j: usize, count: usize },
    #[error("intertwining law fails for group element {element}: {law}")]
    IntertwiningFailed { element: usize, law: String },
    #[error("split data is not compatible with the action: element {element} at state {state}")]
    IncompatibleSplit { element: usize, state: usize },
    #[error("invalid split data: {0}")]
    InvalidSplit(String),
    #[error("invalid one-block code: {0}")]
    InvalidCode(String),
    #[error("map is not right-resolving: edges {first} and {second} have the same image")]
    NotRightResolving { first: Edge, second: Edge },
    #[error("map does not intertwine the actions: element {element} on edge {edge}")]
    NotIntertwining { element: usize, edge: Edge },
    #[error("no commuting lift exists for edge {0} with the canonical bijections")]
    NoCommutingLift(Edge),
    #[error("word is not a cycle of the presentation")]
    NotACycle,
    #[error("quotient map is constant-to-one; no nonexpansivity witness exists")]
    ConstantToOne,
    #[error("quotient is nonexpansive; the constant-to-one consequences do not apply")]
    Nonexpansive,
    #[error("constant-to-one consequence failed: {0}")]
    ConsequenceFailed(String),
    #[error("homomorphism search space {size} exceeds limit {limit}")]
    HomLimitExceeded { size: String, limit: usize },
    #[error("generator index {index} out of range (have {count} generators)")]
    GeneratorOutOfRange { index: usize, count: usize },
    #[error("inconsistent HNN data: {0}")]
    InconsistentHnn(String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        use Error::*;
        match self {
            DimensionMismatch(_)
            | NotSquare { .. }
            | NegativeEntry { .. }
            | DuplicateLabel(_)
            | InvalidPermutation(_)
            | NotAGroup(_)
            | ZeroPolynomial
            | InvalidSplit(_)
            | InvalidCode(_)
            | NotACycle
            | GeneratorOutOfRange { .. }
            | UnknownPreset(_)
            | UnknownGroup(_) => ErrorCategory::Input,
            EntryTooLarge { .. } | GroupLimitExceeded { .. } | CapExceeded { .. } | HomLimitExceeded { .. } => {
                ErrorCategory::Limit
            }
            NotZeroOne { .. }
            | EmptyPresentation
            | NotEssential { .. }
            | NotIrreducible
            | InvarianceViolated { .. }
            | RepresentativeDependence { .. }
            | SseFailed(_)
            | NotUniqueState { .. }
            | IntertwiningFailed { .. }
            | IncompatibleSplit { .. }
            | NotRightResolving { .. }
            | NotIntertwining { .. }
            | NoCommutingLift(_)
            | ConstantToOne
            | Nonexpansive
            | ConsequenceFailed(_)
            | InconsistentHnn(_) => ErrorCategory::Precondition,
        }
    }
}
