use thiserror::Error;

/// Errors raised by the semantic engine, the logics and the parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown symbol `{symbol}`: {context}")]
    UnknownSymbol { symbol: String, context: String },

    #[error("signature error: {0}")]
    Signature(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("model space too large: {count} models exceed the ceiling of {ceiling}")]
    SpaceTooLarge { count: u128, ceiling: u128 },

    #[error("invalid bound {0}: at least one domain element is required")]
    InvalidBound(usize),

    #[error("{operation} requires the {required} fragment, got {found}")]
    Fragment {
        operation: String,
        required: String,
        found: String,
    },

    #[error("concept is not of the form Q1 r1 ... Qn rn . D with D quantifier-free: {0}")]
    Shape(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("set of models is not closed under intersection")]
    NotIntersectionClosed,

    #[error("revision failed: relaxation not exhaustive enough ({frontier})")]
    RevisionFailed { frontier: String },

    #[error("revision operator is not deterministic on {0}")]
    Nondeterministic(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
