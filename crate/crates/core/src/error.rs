use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("input contains no data lines")]
    NoData,
    #[error("no edges remain after canonicalization")]
    EmptyStream,
    #[error("cut value {0} is outside (0, 1]")]
    InvalidCut(f64),
    #[error("cut selects no edges")]
    EmptyCut,
    #[error("node {0} is not present in the snapshot")]
    NodeAbsent(usize),
    #[error("gini needs at least 2 values, got {0}")]
    TooFewValues(usize),
    #[error("gini is undefined when every value is zero")]
    ZeroMean,
    #[error("value {0} is negative or not finite")]
    InvalidValue(f64),
    #[error("series lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("t1 cut ({t1} edges) must precede t2 cut ({t2} edges)")]
    CutOrder { t1: usize, t2: usize },
    #[error("only {0} eligible nodes at t1, need at least 2")]
    TooFewNodes(usize),
    #[error("feature matrix needs at least 3 rows, got {0}")]
    TooFewRows(usize),
    #[error("feature `{0}` has zero variance")]
    ZeroVariance(&'static str),
    #[error("matrix is not symmetric (|a[{i}][{j}] - a[{j}][{i}]| = {diff:e})")]
    NotSymmetric { i: usize, j: usize, diff: f64 },
    #[error("jacobi iteration did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("invalid growth config: {0}")]
    InvalidConfig(String),
    #[error("manifest: {0}")]
    Manifest(String),
}
