use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, FsgError>;

#[derive(Debug, Error)]
pub enum FsgError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid character {ch:?} at line {line}")]
    Alphabet { line: usize, ch: char },

    #[error("no read survived normalization")]
    EmptyInput,

    #[error("read {name:?} is a duplicate of or contained in another read")]
    ContainedRead { name: String },

    #[error("invalid index file: {0}")]
    IndexFormat(String),

    #[error("invalid graph file at line {line}: {msg}")]
    GraphFormat { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}
