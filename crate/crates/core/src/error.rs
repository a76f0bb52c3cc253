use thiserror::Error;

use crate::group::GroupDescriptor;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group descriptor {descriptor}: {constraint}")]
    InvalidDescriptor {
        descriptor: String,
        constraint: &'static str,
    },

    #[error("descriptor mismatch: expected {expected}, found {found}")]
    DescriptorMismatch {
        expected: GroupDescriptor,
        found: GroupDescriptor,
    },

    #[error("word length of {element} exceeds the metric cap {cap}")]
    ExceedsCap { element: String, cap: u32 },

    #[error("ball of radius {radius} in {descriptor} is not enumerable: {reason}")]
    BallNotEnumerable {
        descriptor: GroupDescriptor,
        radius: u32,
        reason: &'static str,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("measure is not symmetric: atom {atom} has weight {weight} but its inverse has {inverse_weight}")]
    AsymmetricMeasure {
        atom: String,
        weight: String,
        inverse_weight: String,
    },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config error at {path}: {message}")]
    Config { path: String, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
