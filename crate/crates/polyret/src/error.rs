use thiserror::Error;

/// Error type shared by all modules.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("zero polynomial has no Newton polytope")]
    ZeroPolynomial,

    #[error("not a face of the polytope")]
    NotAFace,

    #[error("not a facet of the polytope")]
    NotAFacet,

    #[error("({0:?}) is not a column vector for the given facet")]
    NotAColumnVector(Vec<i64>),

    #[error("element is not in the semigroup: {0:?}")]
    NotInSemigroup(Vec<i64>),

    #[error("field extension required: {0}")]
    ExtensionRequired(String),

    #[error("search bound exhausted: {0}")]
    BoundExhausted(String),

    #[error("unsupported dimension {0} for this operation")]
    UnsupportedDimension(usize),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("{0}")]
    Structural(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }
}
