//! Shared error type for the whole crate.
//!
//! Errors fall into three categories, which the CLI maps onto distinct exit
//! codes: bad input, an exhausted resource budget, and an internal invariant
//! that failed to hold (always a bug, never a user mistake).

/// Coarse classification of an [`Error`], used to pick process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The caller handed us something malformed or out of range.
    Input,
    /// A configurable resource budget was exhausted before the computation
    /// finished.
    Budget,
    /// An internal consistency check failed; indicates a construction bug.
    Invariant,
}

/// Errors produced by poset construction, exact arithmetic, and the
/// commutation-class machinery.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("symbol id {id} out of range for an alphabet of {len} symbols")]
    SymbolOutOfRange { id: usize, len: usize },

    #[error("unknown symbol name {name:?}")]
    UnknownSymbol { name: String },

    #[error("duplicate symbol name {name:?}")]
    DuplicateSymbol { name: String },

    #[error("a symbol cannot be declared to commute with itself: {name:?}")]
    SelfCommutingPair { name: String },

    #[error("relation on {size} elements contains a cycle; not a partial order")]
    RelationCycle { size: usize },

    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("rank mismatch: permutation of {points} points needs a type-A system with {} generators, got {rank}", points - 1)]
    RankMismatch { points: usize, rank: usize },

    #[error("the Coxeter system is not of type A")]
    NotTypeA,

    #[error("word is not reduced (prefix of length {position} already absorbs the next letter)")]
    NotReduced { position: usize },

    #[error("scalar context mismatch: one operand lives in Q(2cos(pi/{left})), the other in Q(2cos(pi/{right}))")]
    ContextMismatch { left: u64, right: u64 },

    #[error("generator {gen} is a right descent of the element; cannot extend a depth map through it")]
    DescentExtension { gen: usize },

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("budget exhausted while {what} (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: usize },

    #[error("coordinate vector has mixed signs; not the image of a root")]
    MixedSigns,

    #[error("zero vector is not a root")]
    ZeroVector,

    #[error("depth layer {layer} is not an antichain with pairwise commuting, distinct labels")]
    DepthLayerViolation { layer: usize },

    #[error("no inversion pairs positively with the non-simple new root; depth extension undefined")]
    UndefinedExtension,
}

impl Error {
    /// Which of the three failure categories this error belongs to.
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            BudgetExceeded { .. } => ErrorClass::Budget,
            MixedSigns | ZeroVector | DepthLayerViolation { .. } | UndefinedExtension => {
                ErrorClass::Invariant
            }
            _ => ErrorClass::Input,
        }
    }
}

/// Convenient alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
