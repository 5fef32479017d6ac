use thiserror::Error;

use crate::label::BitLabel;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error("invalid character {ch:?} at position {pos} in bit string")]
    InvalidChar { ch: char, pos: usize },
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("degenerate graph: right universe is empty")]
    DegenerateGraph,
    #[error("invalid universe: {0}")]
    InvalidUniverse(String),
    #[error("universe too large to enumerate at desk scale: {0}")]
    UniverseTooLarge(String),
    #[error("degree {degree} exceeds right universe size {right}")]
    DegreeTooLarge { degree: u64, right: u64 },
    #[error("union requires disjoint lefts (parts {first} and {second} overlap)")]
    OverlappingLefts { first: usize, second: usize },
    #[error("pad target too small: label {label} has length {len}, target {target}")]
    PadTargetTooSmall {
        label: BitLabel,
        len: usize,
        target: usize,
    },
    #[error("right label {label} shorter than merge prefix length {prefix_len}")]
    LabelTooShort { label: BitLabel, prefix_len: usize },
    #[error("product interface mismatch: right label {0} of the first graph is not a left label of the second")]
    InterfaceMismatch(BitLabel),
    #[error("label {0} is not in the left universe")]
    NotInLeft(BitLabel),
    #[error("replication needs at least one copy")]
    ZeroCopies,
    #[error("edge dump line {line}: {msg}")]
    EdgeDump { line: usize, msg: String },
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("subset size {size} exceeds left universe size {left}")]
    SubsetTooLarge { size: u64, left: u64 },
    #[error("delta must satisfy 0 <= delta < 1, got {num}/{den}")]
    InvalidDelta { num: u64, den: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("invalid pipeline config: {0}")]
    InvalidConfig(String),
    #[error("sub-graph {name} failed certification after {attempts} attempts: {detail}")]
    CertificationFailed {
        name: String,
        attempts: u32,
        detail: String,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

#[derive(Debug, Error)]
pub enum MatchError {
    #[error("label {0} is outside the left universe")]
    OutsideUniverse(BitLabel),
    #[error("stream {stream} holds {count} distinct requests, more than the bound {limit}")]
    StreamTooLong {
        stream: usize,
        count: usize,
        limit: u64,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
pub enum MachineError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("empty string has trivial program")]
    EmptyString,
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
