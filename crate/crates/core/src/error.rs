use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("algebra mismatch")]
    AlgebraMismatch,
    #[error("relation {relation} is not admissible: {reason}")]
    NotAdmissible { relation: String, reason: String },
    #[error("basis still growing at path length {0}; algebra is not finite dimensional within the cap")]
    NotFiniteDimensional(usize),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("not commutative: generators {0} and {1} do not commute")]
    NotCommutative(usize, usize),
    #[error("degree {degree} exceeds truncation {trunc}")]
    DegreeOverflow { degree: usize, trunc: usize },
    #[error("chain map lift failed in degree {0}")]
    LiftFailed(usize),
    #[error("not a cocycle")]
    NotACocycle,
    #[error("no Noether normalization found after {0} trials")]
    NormalizationNotFound(usize),
    #[error("scalar actions disagree on Ext^{degree} (generator {generator})")]
    ActionsDisagree { degree: usize, generator: usize },
    #[error("growth sequence too short: {0} entries, need at least 6")]
    SequenceTooShort(usize),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
