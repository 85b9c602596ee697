//! Error types. Every error maps to an [`ErrorKind`] which the CLI turns into an exit code.

use thiserror::Error;

/// Coarse classification of failures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed textual input.
    Parse,
    /// Input outside the documented domain of an operation.
    Precondition,
    /// An internal consistency check failed; always a bug or a mathematical surprise.
    Invariant,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field size {0} exceeds the supported maximum")]
    FieldTooLarge(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("constant polynomial where a nonconstant one is required")]
    ConstantInput,
    #[error("valuation of zero")]
    ZeroValuation,
    #[error("the zero ideal is not allowed here")]
    ZeroIdeal,
    #[error("the unit ideal is not allowed here")]
    UnitIdeal,
    #[error("{0} is not irreducible")]
    NotPrime(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("parse error: {0}")]
    Parse(String),
}

impl ArithError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            ArithError::Parse(_) => ErrorKind::Parse,
            _ => ErrorKind::Precondition,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("orbit partitions did not stabilize by level {0}")]
    StabilizationNotReached(usize),
    #[error("operation requires a prime level, got {0}")]
    CompositeLevel(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl GraphError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            GraphError::Arith(e) => e.kind(),
            GraphError::CompositeLevel(_) => ErrorKind::Precondition,
            GraphError::StabilizationNotReached(_) | GraphError::Invariant(_) => ErrorKind::Invariant,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0} divides the level")]
    PrimeDividesLevel(String),
    #[error("symbol endpoints coincide")]
    DegenerateSymbol,
    #[error("the space of cuspidal cochains is zero")]
    NoCuspForms,
    #[error("empty list of primes")]
    EmptyPrimeList,
    #[error("operation requires q = 2, a prime level and degree at least 3")]
    WitnessPreconditions,
    #[error("Hecke algebra did not stabilize within the degree bound")]
    AlgebraNotStabilized,
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl From<ArithError> for HeckeError {
    fn from(e: ArithError) -> Self {
        HeckeError::Graph(GraphError::Arith(e))
    }
}

impl HeckeError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            HeckeError::Graph(e) => e.kind(),
            HeckeError::Invariant(_) | HeckeError::AlgebraNotStabilized => ErrorKind::Invariant,
            _ => ErrorKind::Precondition,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DrinfeldError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("the leading coefficient must be nonzero")]
    ZeroDelta,
    #[error("coefficients are not integral at {0}")]
    NotIntegral(String),
    #[error("bad reduction at {0}")]
    BadReduction(String),
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl DrinfeldError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            DrinfeldError::Arith(e) => e.kind(),
            DrinfeldError::Invariant(_) => ErrorKind::Invariant,
            _ => ErrorKind::Precondition,
        }
    }
}
