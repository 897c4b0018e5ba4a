use thiserror::Error;

use crate::linalg::{Mat2, Vec2};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid matrix {0}: singular or non-finite")]
    SingularMatrix(Mat2),

    #[error("chart point of family `{found}` does not match group family `{expected}`")]
    FamilyMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("matrix {0} is not an element of the group")]
    NotInGroup(Mat2),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("group sampling is empty")]
    EmptySampling,

    #[error("invalid exponent p = {0}; must be positive")]
    InvalidExponent(f64),

    #[error("admissibility constant must be positive, got {0}")]
    NonPositiveConstant(f64),

    #[error("frequency ({}, {}) lies outside the open dual orbit", .0.x, .0.y)]
    OutsideOrbit(Vec2),

    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    #[error("missing {0}")]
    MissingKey(&'static str),

    #[error("malformed document: {0}")]
    Malformed(String),

    #[error("bad magic bytes {0:?}")]
    BadMagic([u8; 4]),

    #[error("unsupported format version {0}")]
    UnsupportedVersion(u16),

    #[error("truncated payload: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },

    #[error("csv parse error at row {row}, column {col}: {msg}")]
    Csv { row: usize, col: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
