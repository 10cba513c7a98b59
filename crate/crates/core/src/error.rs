use thiserror::Error;

use crate::weights::{TripleWeight, Weight2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("partition sizes differ")]
    PartitionSizeMismatch,

    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<i64>),

    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(Weight2),

    #[error("not a two-row triple of equal size")]
    NotTwoRowTriple,

    #[error("stabilization not reached for {weight} (r capped at {cap})")]
    StabilizationNotReached { weight: TripleWeight, cap: i64 },

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("path space {from} -> {to} did not stabilize below length {cap}")]
    DidNotStabilize { from: String, to: String, cap: usize },

    #[error("H_{orbit}({module}) is not derivable from the local cohomology tables")]
    NotDerivable { module: String, orbit: String },

    #[error("{0} is not a composite module")]
    NotComposite(String),

    #[error("matrix {0} is singular")]
    SingularMatrix(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
}

impl Error {
    /// Malformed input or an unrecognized name, as opposed to a well-formed query the model rejects.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Unknown { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
