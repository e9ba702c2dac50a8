use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported order {0}: q must be a prime in 2..={1}")]
    UnsupportedOrder(u64, u64),

    #[error("not a unital: {0}")]
    NotAUnital(String),

    #[error("degree violation: {0}")]
    DegreeViolation(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("C4 violation: vertices {u} and {v} receive edges from both y={y1} and y={y2}")]
    C4Violation { u: usize, v: usize, y1: usize, y2: usize },

    #[error("edge without provenance: {0}-{1}")]
    EdgeWithoutProvenance(usize, usize),

    #[error("non-empty hypergraph required")]
    EmptyHypergraph,

    #[error("codegree condition fails at l={0}")]
    CodegreeFailure(usize),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("verification failed at stage {stage}: {detail}")]
    VerificationFailed { stage: String, detail: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
