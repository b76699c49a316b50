use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("quotient is not finite-dimensional within length bound {0}")]
    NotFiniteDimensional(usize),
    #[error("malformed relation: {0}")]
    MalformedRelation(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("decomposition failed: {0}")]
    DecompositionFailure(String),
    #[error("module is not projective")]
    NotProjective,
    #[error("iteration did not converge: {0}")]
    NotConverged(String),
    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),
    #[error("complex is not presilting")]
    NotPresilting,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("node budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("exchange graph is incomplete")]
    IncompleteGraph,
    #[error("module is not in the wide subcategory")]
    NotInWide,
    #[error("no matching pair: {0}")]
    MatchFailure(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown command: {0}")]
    UnknownCommand(String),
}

pub type Result<T> = std::result::Result<T, Error>;
