use thiserror::Error;

/// Errors raised across the engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate triangle (area {0:e})")]
    DegenerateTriangle(f64),
    #[error("zero-length segment")]
    ZeroLengthSegment,
    #[error("empty point set")]
    EmptyPointSet,
    #[error("empty mesh")]
    EmptyMesh,
    #[error("cell ({0}, {1}) is outside the board")]
    OutOfBounds(i32, i32),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("vertex {0} has no incident creases")]
    IsolatedVertex(usize),
    #[error("vertex {0}: incoming dihedral angles not solved")]
    UnsolvedIncoming(usize),
    #[error("fold infeasible at vertex {vertex}: {reason}")]
    FoldInfeasible { vertex: usize, reason: String },
    #[error("illegal action: {0}")]
    IllegalAction(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("objective unsupported by this search: {0}")]
    UnsupportedObjective(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
