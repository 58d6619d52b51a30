use thiserror::Error;

/// Failure modes shared by every module of the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Shapes, dimensions or parent objects do not match.
    #[error("structural error: {0}")]
    Structural(String),

    /// A requested object does not exist (e.g. no implementing unitary).
    #[error("no solution: {0}")]
    NoSolution(String),

    /// An enumeration or matrix would exceed the configured bound.
    #[error("capacity exceeded: {what} = {actual} > {bound}")]
    Capacity {
        what: &'static str,
        actual: usize,
        bound: usize,
    },

    /// The input carries phases that are not on a finite root-of-unity grid.
    #[error("undecidable: {0}")]
    Undecidable(String),

    /// A documented precondition was violated by the caller.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Input data failed validation; the message lists the offending items.
    #[error("validation failed: {0}")]
    Validation(String),

    /// An internal invariant broke; signals inconsistent input tables.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
