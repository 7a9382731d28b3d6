use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by an interval containing zero ({operand})")]
    DivisionByZero { operand: &'static str },
    #[error("interval endpoints out of order: {lo} > {hi}")]
    Inverted { lo: String, hi: String },
    #[error("malformed rational {text:?}: {reason}")]
    MalformedRational { text: String, reason: &'static str },
    #[error(transparent)]
    Decimal(#[from] ParseDecimalError),
}

/// Failure to read a decimal literal. `position` is the 0-based character
/// index of the offending character (or the text length if input ended early).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed decimal literal {text:?} at position {position}: {reason}")]
pub struct ParseDecimalError {
    pub text: String,
    pub position: usize,
    pub reason: &'static str,
}
