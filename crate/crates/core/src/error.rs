use pairstab_algebra::{AlgebraError, BudgetExceeded};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error(transparent)]
    Algebra(AlgebraError),
    #[error(transparent)]
    Budget(BudgetExceeded),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("torus-weight representation needs a diagonal arc")]
    NotDiagonal,
    #[error("zero diagonal entry at position {0}")]
    ZeroDiagonalEntry(usize),
    #[error("operation requires a torus group")]
    NotTorus,
    #[error("unsupported group for this operation: {0}")]
    UnsupportedGroup(String),
    #[error("representation not polynomial; deg undefined")]
    DegUndefined,
    #[error("zero vector has no order")]
    ZeroVector,
    #[error("invalid arc: {0}")]
    InvalidArc(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("point does not lie on Y")]
    PointNotOnY,
    #[error("degenerate polytope: {0}")]
    DegeneratePolytope(String),
    #[error("invalid piecewise-linear function: {0}")]
    InvalidFunction(String),
    #[error("a0 must be nonzero")]
    ZeroLeadingCoefficient,
    #[error("missing intersection data: {0}")]
    MissingIntersectionData(&'static str),
    #[error("empty family")]
    EmptyFamily,
    #[error("internal certificate check failed: {0}")]
    CertificateCheck(String),
}

impl From<AlgebraError> for CoreError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Budget(b) => CoreError::Budget(b),
            AlgebraError::ZeroVector => CoreError::ZeroVector,
            other => CoreError::Algebra(other),
        }
    }
}

impl From<BudgetExceeded> for CoreError {
    fn from(e: BudgetExceeded) -> Self {
        CoreError::Budget(e)
    }
}

pub type Result<T, E = CoreError> = std::result::Result<T, E>;
