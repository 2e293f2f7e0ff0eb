use thiserror::Error;

use crate::tree::{MAX_VERTICES, VertexId};

/// Errors produced while building trees or evaluating shortcut effects.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: expected two whitespace-separated vertex tokens, got {found}")]
    MalformedLine { line: usize, found: usize },
    #[error("line {line}: self-loop at vertex '{label}'")]
    SelfLoop { line: usize, label: String },
    #[error("line {line}: duplicate edge '{a}' '{b}'")]
    DuplicateEdge { line: usize, a: String, b: String },
    #[error("line {line}: edge '{a}' '{b}' closes a cycle")]
    CycleDetected { line: usize, a: String, b: String },
    #[error("input is disconnected: not every vertex is reachable from the first")]
    Disconnected,
    #[error("empty input: no edges found")]
    EmptyInput,
    #[error("vertex count {n} exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices { n: u64 },
    #[error("need at least {min} vertices, got {n}")]
    TooFewVertices { n: u64, min: u64 },
    #[error("unknown vertex id {0}")]
    UnknownVertex(VertexId),
    #[error("vertices {0} and {1} are identical")]
    SameVertex(VertexId, VertexId),
    #[error("vertices {0} and {1} are adjacent; the pair is not an inset edge")]
    NotInsetEdge(VertexId, VertexId),
    #[error("vertex {vertex} has degree {degree}, need at least {min}")]
    DegreeTooSmall {
        vertex: VertexId,
        degree: usize,
        min: usize,
    },
    #[error("vertex {0} is not an off-cycle neighbor of frame endpoint {1}")]
    NotABranch(VertexId, VertexId),
    #[error("vertices {0} and {1} do not form a tree edge")]
    NotTreeEdge(VertexId, VertexId),
    #[error("cycle length {0} is too short; inset edges produce cycles of length >= 3")]
    CycleTooShort(u32),
    #[error("{0} records exceed the in-memory limit of {1}")]
    TooManyRecords(u64, u64),
    #[error("index is empty; the tree has no inset edges")]
    EmptyIndex,
    #[error("duplicate record for pair ({0}, {1}); the sweep must emit each pair once")]
    DuplicateRecord(VertexId, VertexId),
    #[error("k = {k} is out of range 1..={max}")]
    CountOutOfRange { k: u64, max: u64 },
    #[error("cannot parse '{0}' as a rational number")]
    InvalidRational(String),
    #[error("unknown metric '{0}', expected dprime|adprime")]
    UnknownMetric(String),
    #[error("unknown tree kind '{0}', expected path|star|caterpillar|random")]
    UnknownTreeKind(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
