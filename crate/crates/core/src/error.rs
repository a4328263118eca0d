use thiserror::Error;

/// Errors raised by constructions and invariant computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty ground set")]
    EmptyGroundSet,
    #[error("partitions live on different ground sets ({0} vs {1})")]
    GroundSetMismatch(String, String),
    #[error("invalid semi-pointed partition: {0}")]
    InvalidPartition(String),
    #[error("invalid poset variant: {0}")]
    InvalidVariant(String),
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("poset is not pure: {0}")]
    NotPure(String),
    #[error("{0} is not below or equal to {1}")]
    NotComparable(String, String),
    #[error("element {0} is not in the interval")]
    NotInInterval(String),
    #[error("map is not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("series constant term is not invertible")]
    NonInvertible,
    #[error("interpolation depth {depth} is below the required {required}")]
    InsufficientDepth { depth: usize, required: usize },
    #[error("size {size} exceeds the enumeration cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("degenerate factor {factor} for cycle type {cycle_type}")]
    DegenerateFactor { factor: String, cycle_type: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
