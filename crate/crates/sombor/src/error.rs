use thiserror::Error;

/// Errors surfaced by samplers, index evaluation, and the sweep driver.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter fell outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An edge list violated the simple-graph invariants.
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// Malformed edge-list text.
    #[error("parse error: {0}")]
    Parse(String),

    /// A computation produced a non-finite value or a solver gave up.
    /// Carries enough seed context to replay the failing replica.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// Pearson correlation requested on a constant or degenerate sequence.
    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
