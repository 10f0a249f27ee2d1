use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system type `{0}`")]
    UnsupportedType(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point lies on a wall of the affine hyperplane arrangement")]
    OnWall,
    #[error("alcoves are not adjacent")]
    NotAdjacent,
    #[error("expression is not a Laurent polynomial")]
    NotPolynomial,
    #[error("unsupported stable basis spec: {0}")]
    UnsupportedSpec(String),
    #[error("alcove translation is not in the root lattice")]
    NoncanonicalAlcove,
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn context(self, ctx: impl Into<String>) -> Error {
        Error::Context {
            context: ctx.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
