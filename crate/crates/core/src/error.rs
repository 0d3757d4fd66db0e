use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty sequence")]
    Empty,

    #[error("illegal character {found:?} at position {position}")]
    IllegalChar { position: usize, found: char },

    #[error("character {found:?} at position {position} mixes the +/- and 1/0 alphabets")]
    MixedAlphabet { position: usize, found: char },

    #[error("{what} requires length at least {min}, got {n}")]
    TooShort { what: &'static str, n: usize, min: usize },

    #[error("{what} requires odd length, got {n}")]
    EvenLength { what: &'static str, n: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("guard rail: {0}")]
    GuardRail(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
