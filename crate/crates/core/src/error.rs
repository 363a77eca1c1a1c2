use crate::bigraph::ParseError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("polynomial parse error: {0}")]
    PolyParse(String),
    #[error("division is not exact")]
    InexactDivision,
    #[error("interval does not isolate a single root")]
    RootNotIsolated,
    #[error("graph rejected: {0}")]
    Rejected(String),
    #[error("numerical routine did not converge: {0}")]
    NoConvergence(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("internal error: {0}")]
    Internal(String),
}
