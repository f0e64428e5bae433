use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    #[error("q must lie in (0,1), got {0}")]
    InvalidQ(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("mode mismatch: cannot combine float and exact values")]
    ModeMismatch,

    #[error("singular point: x = 0 is not a lattice point")]
    Singularity,

    #[error("lattice boundary: {0}")]
    Boundary(String),

    #[error("non-finite value at {0}")]
    NonFinite(String),

    #[error("product pole at factor s = {s} (x = {x})")]
    Pole { s: usize, x: f64 },

    #[error("rewrite budget of {0} steps exhausted")]
    NonTermination(usize),

    #[error("rule {0} does not decrease the word order")]
    NonDecreasingRule(String),

    #[error("seed error: {0}")]
    Seed(String),

    #[error("non-removable pole of the delta kernel at x = x' = {0}")]
    DeltaPole(f64),

    #[error("decay precondition violated: {0}")]
    Decay(String),

    #[error("inexact division: {0}")]
    InexactDivision(String),
}

pub type Result<T> = std::result::Result<T, QError>;
