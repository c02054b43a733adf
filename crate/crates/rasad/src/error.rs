use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error on {path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("no valid records in {path} ({ingested} lines read)")]
    EmptyCorpus { path: PathBuf, ingested: u64 },

    #[error("no classifications to write")]
    NoClassifications,

    #[error("lexicon: {0}")]
    Lexicon(String),

    #[error("events file {path}, row {row}: {message}")]
    EventRow {
        path: PathBuf,
        row: usize,
        message: String,
    },

    #[error("event window out of range: {0}")]
    WindowOutOfRange(String),

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
