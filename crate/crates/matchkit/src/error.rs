use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Error, Debug)]
pub enum Error {
    #[error("line {line}: malformed: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: vertex id {id} out of range 1..={n}")]
    IdOutOfRange { line: usize, id: i64, n: usize },
    #[error("line {line}: self-loop on vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("missing problem line")]
    MissingProblemLine,
    #[error("line {line}: weight {w} too large: transformed weights would overflow 64 bits")]
    WeightOverflow { line: usize, w: i128 },
    #[error("arithmetic overflow while transforming weights")]
    TransformOverflow,
    #[error("graph is not simple")]
    NotSimple,
    #[error("weights are not conservative but problem kind {0} requires it")]
    NotConservative(String),
    #[error("rank l missing on an SPM instance")]
    MissingRank,
    #[error("forced edges {0} and {1} share a vertex")]
    ForcedSetNotMatching(usize, usize),
    #[error("edge index {0} out of range (graph has {1} edges)")]
    EdgeIndexOutOfRange(usize, usize),
    #[error("instance has {0} vertices, exceeding the brute-force limit {1}")]
    TooLargeForBruteForce(usize, usize),
    #[error("cycle is not alternating with respect to the base matching")]
    NotAlternating,
    #[error("cycles are not vertex-disjoint")]
    NotDisjoint,
    #[error("cycle is not a simple closed walk")]
    NotSimpleCycle,
    #[error("matching is not perfect")]
    NotPerfect,
    #[error("solution does not match the instance: {0}")]
    SolutionMismatch(String),
    #[error("context file is inconsistent: {0}")]
    BadContext(String),
    #[error("empty weight range")]
    EmptyWeightRange,
    #[error("unsupported reduction: {0} -> {1}")]
    UnsupportedReduction(String, String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
