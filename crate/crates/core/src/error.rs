use thiserror::Error;

use crate::tree::Label;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("label {0} does not occur in the tree")]
    UnknownLabel(Label),

    #[error("labels must strictly increase from left to right (found {prev} then {next})")]
    LabelOrder { prev: Label, next: Label },

    #[error("trees have different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),

    #[error("trees carry different label sets")]
    LabelMismatch,

    #[error("the two trees do not form a base pair")]
    NotBasePair,

    #[error("expected a positive base pair")]
    NotPositive,

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("size {n} exceeds the search budget of {limit}; pass the force option to override")]
    Budget { n: usize, limit: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("broken path: entries {0} and {1} are not a base pair")]
    BrokenPath(usize, usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
