use thiserror::Error;

/// Failure to read a word, sequence or rational literal.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {found:?} at position {position}")]
    UnexpectedChar { position: usize, found: char },
    #[error("unexpected end of input at position {position}: expected {expected}")]
    UnexpectedEnd { position: usize, expected: &'static str },
    #[error("empty period at position {position}")]
    EmptyPeriod { position: usize },
    #[error("invalid rational {0:?}")]
    Rational(String),
}

/// Construction errors for eventually periodic sequences.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("period word must be nonempty")]
    EmptyPeriod,
}
