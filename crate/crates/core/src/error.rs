use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("could not certify the squarefree part of {0}")]
    SquareFreeUncertified(String),
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("matrix is not indecomposable: {0}")]
    NotIndecomposable(String),
    #[error("cannot certify irreducibility of a degree {0} polynomial over Q")]
    UnsupportedDegree(usize),
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("subspaces live in different ambient spaces ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("subspace is not coisotropic")]
    NotCoisotropic,
    #[error("subspace is not isotropic: {0}")]
    NotIsotropic(String),
    #[error("matrix is not a symplectic form: {0}")]
    NotSymplectic(String),
    #[error("decomposition budget exhausted: {0}")]
    DecompositionBudgetExceeded(String),
    #[error("search inconclusive: {0}")]
    SearchInconclusive(String),
    #[error("field too small for this algorithm: {0}")]
    FieldTooSmall(String),
    #[error("invalid k: {0}")]
    InvalidK(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("sextuple is not framed: {0}")]
    NotFramed(String),
    #[error("invalid gamma: {0}")]
    InvalidGamma(String),
    #[error("sextuple is not of continuous type: {0}")]
    NotContinuous(String),
    #[error("polynomial has odd-degree terms")]
    NotEvenPolynomial,
    #[error("polynomial q does not satisfy q(x) = q(1 - x) up to a unit")]
    NotSelfDualPolynomial,
    #[error("hypotheses fail: {0}")]
    HypothesesFail(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
