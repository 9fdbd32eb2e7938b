use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rational {0:?}")]
    BadRational(String),
    #[error("expected 8 coordinates, got {0}")]
    Arity(usize),
    #[error("not a K-type: {0}")]
    NotKType(String),
    #[error("coset index {0} out of range")]
    Index(usize),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{locus}: {msg}")]
    Data { locus: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
