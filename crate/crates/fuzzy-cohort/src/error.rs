use thiserror::Error;

/// Errors produced by grading, relation building, scoring and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("score {0} outside [0, 5]")]
    ScoreOutOfRange(f64),

    #[error("count {count} exceeds cohort size {n}")]
    CountExceedsCohort { count: u64, n: u64 },

    #[error("stage counts sum to {sum}, expected cohort size {n}")]
    CountSumMismatch { sum: u64, n: u64 },

    #[error("membership degree {0} outside [0, 1]")]
    DegreeOutOfRange(String),

    #[error("empty fuzzy set: all membership degrees are zero")]
    EmptyFuzzySet,

    #[error("empty relation: no well-ordered profile has positive membership")]
    EmptyRelation,

    #[error("empty combined relation: all pseudo-frequencies are zero")]
    EmptyCombinedRelation,

    #[error("stage count mismatch: expected {expected}, got {got}")]
    StageCountMismatch { expected: usize, got: usize },

    #[error("operation requires per-student records, input is pregraded fuzzy sets")]
    RecordsRequired,

    #[error("unknown label '{0}'")]
    UnknownLabel(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid invocation: {0}")]
    Usage(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
