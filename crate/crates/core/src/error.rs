use std::fmt;

/// Errors raised by the bundle and polygon calculus.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero denominator in slope")]
    ZeroDenominator,
    #[error("multiplicity must be positive, got {0}")]
    NonPositiveMultiplicity(String),
    #[error("{0} is undefined for the zero bundle")]
    ZeroBundle(&'static str),
    #[error("bundle {0} is not semistable")]
    NotSemistable(String),
    #[error("slopes must increase strictly: {0}")]
    SlopeOrder(String),
    #[error("vector has zero x-component")]
    ZeroXComponent,
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A syntax error in a textual or JSON bundle/polygon expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where the problem was detected.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }

    /// Renders the input with a caret under the offending position.
    pub fn diagnostic(&self, input: &str) -> String {
        let col = input[..self.position.min(input.len())].chars().count();
        format!(
            "{}\n  {}\n  {}^",
            self,
            input,
            " ".repeat(col)
        )
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}
