use crate::metric::PointId;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point id {id} out of range for a space of {n} points")]
    OutOfRange { id: PointId, n: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate points: {first} and {second} coincide")]
    DuplicatePoint { first: PointId, second: PointId },

    #[error("line {line}: expected {expected} coordinates, found {found}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("empty point set")]
    EmptySpace,

    #[error("invalid distance table: {0}")]
    InvalidTable(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unsupported dimension {dim}: {what} requires {required}")]
    UnsupportedDimension {
        dim: usize,
        required: usize,
        what: &'static str,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("graph is not a PN-graph: no out-neighbor of {from} is strictly closer to {to}")]
    NotNavigable { from: PointId, to: PointId },

    #[error("graph is not connected: {to} is unreachable from {from}")]
    Disconnected { from: PointId, to: PointId },

    #[error("graph has {graph} vertices but the space has {space} points")]
    SizeMismatch { graph: usize, space: usize },
}
