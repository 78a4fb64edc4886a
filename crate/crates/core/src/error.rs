use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet size {0} outside 1..=36")]
    AlphabetSize(usize),
    #[error("letter {letter} not in alphabet of size {size}")]
    LetterOutOfRange { letter: u8, size: usize },
    #[error("invalid letter character {0:?}")]
    BadLetterChar(char),
    #[error("invalid rational {0:?}")]
    BadRational(String),
    #[error("invalid freeness spec: {0}")]
    BadFreeness(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("missing image for variable {0}")]
    MissingVariable(String),
    #[error("missing orientation for undirected occurrence ({fragment}, {position})")]
    MissingOrientation { fragment: usize, position: usize },
    #[error("invalid morphism: {0}")]
    Morphism(String),
    #[error("no {0} exists")]
    Nonexistent(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
