use thiserror::Error;

/// Errors raised by the poset, graph, complex and certificate routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: duplicate element `{name}`")]
    DuplicateElement { line: usize, name: String },

    #[error("line {line}: unknown element `{name}`")]
    UnknownName { line: usize, name: String },

    #[error("order is not antisymmetric: `{a}` <= `{b}` and `{b}` <= `{a}`")]
    AntisymmetryViolation { a: String, b: String },

    #[error("poset has no least element")]
    NoBottom,

    #[error("poset has no greatest element")]
    NoTop,

    #[error("factor {index} is not bounded")]
    UnboundedFactor { index: usize },

    #[error("need at least {need} factors, got {got}")]
    TooFewFactors { need: usize, got: usize },

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogName(String),

    #[error("bad parameter: {0}")]
    BadParam(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("poset is not Boolean: {0}")]
    NotBoolean(String),

    #[error("{what} has size {size}, above the configured cap {cap}")]
    SizeLimitExceeded { what: &'static str, size: usize, cap: usize },

    #[error("complex has no facets")]
    EmptyComplex,

    #[error("vertex set is not independent: `{0}` -- `{1}`")]
    NotIndependent(String, String),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("poset has fewer than two atoms")]
    FewerThanTwoAtoms,

    #[error("pairs do not partition the vertex set: {0}")]
    PairsDontPartition(String),

    #[error("not a face of the complex: {0:?}")]
    NotAFace(Vec<usize>),

    #[error("factor {index} has nonzero zero-divisors (more than one atom)")]
    FactorHasZeroDivisors { index: usize },

    #[error("factor sizes are not ascending: {0:?}")]
    NotAscending(Vec<usize>),

    #[error("factor index {index} out of range for {len} factors")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("indices must be strictly increasing: ({0}, {1}, {2})")]
    IndicesNotDistinctOrOrdered(usize, usize, usize),

    #[error("closed triple count needs equal factor sizes, got {0:?}")]
    NeedEqualSizesForTriple(Vec<usize>),

    #[error("expected {expected} factors, got {got}")]
    WrongArity { expected: usize, got: usize },

    /// A theorem-level contract failed inside the library. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for errors caused by the caller's input rather than by the library.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}
