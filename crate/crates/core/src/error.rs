use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: vertex id {id} outside [1, {n}]")]
    OutOfRange { line: usize, id: u64, n: usize },
    #[error("line {line}: weight {text:?} is not a finite non-negative number")]
    BadWeight { line: usize, text: String },
    #[error("edge ({u}, {v}) has invalid weight {w}")]
    InvalidEdge { u: usize, v: usize, w: f64 },
    #[error("vertex {0} outside the graph")]
    VertexOutOfRange(usize),
    #[error("infeasible generator spec: {0}")]
    Infeasible(String),
    #[error("degree cap must be at least 3, got {0}")]
    BadCap(usize),
    #[error("sampled set must contain the source vertex {0}")]
    BadR(usize),
    #[error("bundle structure does not match the graph: {0}")]
    BadBundleStructure(String),
    #[error("representatives of vertex {vertex} disagree: {a} vs {b}")]
    InternalInconsistency { vertex: usize, a: f64, b: f64 },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}
