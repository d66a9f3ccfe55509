use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cannot normalize the zero vector")]
    ZeroVector,

    #[error("nullspace has dimension {0}, expected 1")]
    Nullity(usize),

    #[error("nullspace generator has mixed signs")]
    MixedSign,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid triangulation: {0}")]
    Triangulation(String),

    #[error("invalid problem: {0}")]
    Problem(String),

    #[error("bound undefined: facet count {facets} is smaller than dimension {dim}")]
    BoundDomain { dim: usize, facets: usize },

    #[error("dynamic ordering cannot be computed statically")]
    DynamicOrdering,

    #[error("dimension {dim} exceeds the oracle limit {limit}")]
    OracleLimit { dim: usize, limit: usize },

    #[error("oracle would examine {count} subsets, over the limit {limit}")]
    OracleSubsets { count: u128, limit: u128 },

    #[error("recovered ray has zero set {found:?}, expected {expected:?}")]
    ZeroSetMismatch {
        expected: Vec<usize>,
        found: Vec<usize>,
    },

    #[error("engine invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
