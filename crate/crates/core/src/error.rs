use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe must be nonempty")]
    EmptyUniverse,

    #[error("element {element} is outside the universe of size {size}")]
    ElementOutOfRange { element: usize, size: usize },

    #[error("index {index} is outside the index set of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("index set must be nonempty")]
    EmptyIndexSet,

    #[error("a filter needs at least one generator")]
    NoGenerators,

    #[error("generators intersect to the empty set, so the filter is improper")]
    ImproperFilter,

    #[error("set {set:?} is not a member of the filter")]
    NotInFilter { set: Vec<usize> },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("product has {tuples} tuples, above the enumeration cap of {cap}")]
    SizeCap { tuples: u128, cap: u128 },

    #[error("malformed path witness: {0}")]
    MalformedWitness(String),

    #[error("path lifting precondition failed: {0}")]
    LiftPrecondition(String),

    #[error("variable index {index} is unbound (assignment has {bound} entries)")]
    UnboundVariable { index: usize, bound: usize },

    #[error("formula rejected: {0}")]
    FormulaClass(String),

    #[error("distance formula bound {n} exceeds the maximum of {max}")]
    FormulaTooLarge { n: usize, max: usize },

    #[error("symbolic precondition failed: {0}")]
    SymbolicPrecondition(String),
}
