use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("entry count {found} does not match dimension {dim} (expected {expected})")]
    EntryCount {
        dim: usize,
        expected: usize,
        found: usize,
    },
    #[error("ambient dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("algebra is not commutative")]
    NotCommutative,
    #[error("numerical inconsistency: {0}")]
    Numerical(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("unknown surface index {0}")]
    UnknownSurface(usize),
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("generator `{0}` does not lie in the ambient algebra")]
    GeneratorOutsideAmbient(String),
    #[error("too many generators: {found} (cap {cap})")]
    TooManyGenerators { found: usize, cap: usize },
    #[error("operator is not a projection")]
    NotAProjection,
    #[error("operator does not lie in the context")]
    NotInContext,
    #[error("point set is not closed")]
    NotClosed,
    #[error("enumeration exceeded the cap of {cap} candidate sets")]
    EnumerationCap { cap: usize },
    #[error("chain precondition failed: {0}")]
    ChainPrecondition(String),
    #[error("value {requested} is not realisable as a character value; available: {available}")]
    UnrealizableCharacter {
        requested: String,
        available: String,
    },
    #[error("hypotheses violated: {}", .0.join("; "))]
    Hypothesis(Vec<String>),
    #[error("generator `{0}` carries no configuration/Weyl tag")]
    UntaggedGenerator(String),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("graph has {found} edges; automorphism search is capped at {cap}")]
    AutomorphismCap { found: usize, cap: usize },
}
