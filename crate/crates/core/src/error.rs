use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root datum {kind}{rank}: {reason}")]
    InvalidRootDatum {
        kind: String,
        rank: usize,
        reason: String,
    },

    #[error("group order {order} exceeds the configured cap {cap}")]
    GroupOrderCap { order: u128, cap: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("weight {0} is not integral")]
    NotIntegral(String),

    #[error("value needs a field extension: {0}")]
    NeedsExtension(String),

    #[error("torus factor inconsistency in class '{label}': {reason}")]
    TorusFactorMismatch { label: String, reason: String },

    #[error("dataset is invalid: {}", .0.join("; "))]
    InvalidDataset(Vec<String>),

    #[error("parse error at {path}: {reason}")]
    Parse { path: String, reason: String },

    #[error("representation property fails: {0}")]
    NotARepresentation(String),

    #[error("search bound exceeded: {0}")]
    Resource(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),
}

impl Error {
    /// Resource-type failures map to a distinct process exit code.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::GroupOrderCap { .. } | Error::Resource(_))
    }
}
