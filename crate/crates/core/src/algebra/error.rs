use super::budget::BudgetExceeded;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("variable `{0}` declared with conflicting truncation caps")]
    VariableConflict(String),
    #[error("matrix is {rows}×{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("Pfaffian of an odd-size ({0}×{0}) matrix")]
    OddSize(usize),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("assignment is missing variable `{0}`")]
    MissingVariable(String),
    #[error("no ring homomorphism: {0}")]
    NoHomomorphism(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}
