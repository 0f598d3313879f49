use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} does not fit below 2^63")]
    ModulusTooLarge(u64),
    #[error("prime {0} is below the minimum 2^30 accepted for scenarios")]
    PrimeTooSmall(u64),
    #[error("unknown field `{0}` (expected `rationals` or `prime:<p>`)")]
    Unknown(String),
    #[error("{0} has a denominator divisible by {1}")]
    BadReduction(String, u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

/// A located parse failure. `line` and `column` are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub column: usize,
    /// Dotted path of the offending scenario field, empty for bare expressions.
    pub path: String,
    pub message: String,
}

impl ParseDiagnostic {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseDiagnostic { line, column, path: String::new(), message: message.into() }
    }

    pub fn at_path(mut self, path: impl Into<String>) -> Self {
        self.path = path.into();
        self
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}:{}: {}", self.line, self.column, self.message)
        } else {
            write!(f, "{}:{}: {}: {}", self.line, self.column, self.path, self.message)
        }
    }
}

impl std::error::Error for ParseDiagnostic {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GbError {
    #[error("computation budget exhausted")]
    BudgetExceeded,
    #[error("expected a {expected} monomial order")]
    WrongOrder { expected: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("the 1-form does not have an isolated singularity on X: {0}")]
    NonIsolated(String),
    #[error("non-generic choice: {0}")]
    NonGeneric(String),
    #[error("X does not have the expected codimension: {0}")]
    Codimension(String),
    #[error("singular support of the critical ideal is not covered by the listed rational points")]
    IrrationalSingularPoints,
    #[error("determinantal Milnor number requires a smoothable singularity: {0}")]
    NotSmoothable(String),
    #[error("computation budget exhausted")]
    BudgetExceeded,
    #[error("input error: {0}")]
    Input(String),
}

impl From<GbError> for IndexError {
    fn from(e: GbError) -> Self {
        match e {
            GbError::BudgetExceeded => IndexError::BudgetExceeded,
            other => IndexError::Input(other.to_string()),
        }
    }
}

impl From<PolyError> for IndexError {
    fn from(e: PolyError) -> Self {
        IndexError::Input(e.to_string())
    }
}
