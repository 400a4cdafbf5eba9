use std::fmt;

use thiserror::Error;

/// A single violated bound on a valuation component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundViolation {
    pub component: String,
    pub bound: String,
}

impl fmt::Display for BoundViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violates {}", self.component, self.bound)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("bound violation: {}", join(.0))]
    BoundViolation(Vec<BoundViolation>),

    #[error("division by zero")]
    DivisionByZero,

    #[error("non-finite floating point result")]
    NonFinite,

    #[error("invalid number literal {0:?}")]
    InvalidNumber(String),

    #[error("degenerate binomial tree: up and down factors coincide")]
    DegenerateTree,

    #[error("unknown component {name:?} for model {model}")]
    UnknownComponent { name: String, model: String },

    #[error("missing value for component {0:?}")]
    MissingComponent(String),

    #[error("schema mismatch: expected {expected}, found {found}")]
    SchemaMismatch { expected: String, found: String },

    #[error("spread {spread} exceeds the {size} available components")]
    SpreadTooLarge { spread: usize, size: usize },

    #[error("daemon utility is zero at the unperturbed valuation")]
    ZeroBaseline,

    #[error("unknown action {0}")]
    UnknownAction(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid mixed strategy: {0}")]
    InvalidStrategy(String),

    #[error("game is not zero-sum")]
    NotZeroSum,

    #[error("equilibria disagree on the value of a zero-sum game")]
    InconsistentValue,

    #[error("strength model is not a fiscal-policy strength: {0}")]
    NotFiscalStrength(String),

    #[error("fiscal classification disagrees with the compiled game: {0}")]
    ClassificationMismatch(String),

    #[error("utility expression has no nonzero coefficient")]
    EmptyUtility,

    #[error("unknown name {name:?}{}", location(.line, .column))]
    UnknownName {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

fn join(v: &[BoundViolation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

fn location(line: &usize, column: &usize) -> String {
    if *line == 0 {
        String::new()
    } else {
        format!(" at line {line}, column {column}")
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
