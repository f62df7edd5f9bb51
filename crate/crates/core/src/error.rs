use thiserror::Error;

use crate::seqcore::DefiningQuad;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at position {position}: unexpected character {found:?}")]
    Parse { position: usize, found: char },

    #[error("parse error on line {line}: {message}")]
    Format { line: usize, message: String },

    /// The compressed quadruple cannot be the compression of any defining rows.
    #[error("infeasible instance: {0}")]
    Infeasible(String),

    /// The solver gave up before the search was exhausted. The solutions found
    /// so far are carried along; they are not an exhaustive answer.
    #[error("resource limit of {limit} conflicts exceeded after {} solutions", partial.len())]
    ResourceLimit {
        limit: u64,
        partial: Vec<DefiningQuad>,
    },

    /// A search stopped early; its partial result is flagged non-exhaustive.
    #[error("search of order {} is incomplete after {} quads", .0.report.n, .0.quads.len())]
    Incomplete(Box<crate::pipeline::Search>),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
