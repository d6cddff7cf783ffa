use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),

    #[error("oracle capacity exceeded: n = {n} is above the cap of {cap}")]
    OracleCapacity { n: usize, cap: usize },

    #[error("invariant backend capacity exceeded: {0}")]
    BackendCapacity(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),

    #[error("graph has no polyhedral embedding in the supplied list")]
    NoPolyhedralEmbedding,
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
