use crate::scalars::ScalarError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("mixed algebras: {0} and {1}")]
    MixedAlgebras(String, String),
    #[error("map {map}: no image for generator {generator}")]
    MissingImage { map: String, generator: String },
    #[error("arity mismatch: expected {expected} legs, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },
    #[error("resource cap exceeded: {what} ({used} > {cap})")]
    ResourceCap { what: String, used: usize, cap: usize },
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
