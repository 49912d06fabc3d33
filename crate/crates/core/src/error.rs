use thiserror::Error;

use crate::expr::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {n} exceeds the sweep guard of {limit} (use force to lift it)")]
    DimensionGuard { n: usize, limit: usize },

    #[error("invalid dimension {0}")]
    InvalidDimension(usize),

    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("state word {word:#x} has bits above dimension {n}")]
    StrayBits { word: u64, n: usize },

    #[error("coordinate {0} is not a product of literals")]
    NotAnAndNet(usize),

    #[error("coordinate {coordinate}: variable {variable} is both a positive and a negative input")]
    OverlappingInputs { coordinate: usize, variable: usize },

    #[error("signed digraph has parallel edges from {from} to {to}")]
    NotSimple { from: usize, to: usize },

    #[error("and-net is not negative: coordinate {0} has a positive input")]
    NotNegative(usize),

    #[error("edge from {from} to {to} does not flip exactly one coordinate")]
    NotAHypercubeEdge { from: String, to: String },

    #[error("duplicate edge from {from} to {to}")]
    DuplicateEdge { from: String, to: String },

    #[error("cycle enumeration exceeded the cap of {0} cycles")]
    CycleCapExceeded(usize),

    #[error("cycle is not a cycle of the graph: {0}")]
    NotACycle(String),

    #[error("global interaction graph has a loop on coordinate {0}")]
    LoopOnReducedVariable(usize),

    #[error("invalid quasi-delocalizing function: {0}")]
    InvalidQuasiDelocalizing(String),

    #[error("inconsistent expansion trace: {0}")]
    InconsistentTrace(String),

    #[error("invalid isometry: {0}")]
    InvalidIsometry(String),

    #[error("trajectory prefix missing: {0}")]
    PrefixMissing(String),

    #[error("construction error: {0}")]
    Construction(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("{0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
