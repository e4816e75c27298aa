use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rational body is not invertible")]
    NonInvertibleBody,
    #[error("element is not group-valued: {0}")]
    NotGroupValued(String),
    #[error("Jacobi identity violated: {0}")]
    JacobiViolation(String),
    #[error("malformed Lie data: {0}")]
    MalformedLieData(String),
    #[error("malformed skeleton: {0}")]
    MalformedSkeleton(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("illegal slide: {0}")]
    IllegalSlide(String),
    #[error("cannot fuse a vertex with itself")]
    SameVertex,
    #[error("path is not composable: {0}")]
    NonComposablePath(String),
    #[error("word does not close up: {0}")]
    NonClosedWord(String),
    #[error("proper powers are not supported: {0}")]
    ProperPowerUnsupported(String),
    #[error("logdet atoms can only be differentiated, not evaluated")]
    LogdetNotEvaluable,
    #[error("function `{0}` is not available for this group")]
    UnsupportedFunction(String),
    #[error("random sampling failed after {0} attempts")]
    RetryExhausted(usize),
    #[error("parse error at {pos}: {msg}")]
    ParseError { pos: usize, msg: String },
    #[error("invalid suite configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("too many Grassmann generators ({0} > 64)")]
    GeneratorBudget(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::ParseError { pos, msg: msg.into() }
    }
}
