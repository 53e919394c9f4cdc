use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("annotation mismatch: {0}")]
    AnnotationMismatch(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(u32),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid solution: {0}")]
    InvalidSolution(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("parameter error: {0}")]
    Parameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
