use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The computation would exceed the configured support guard.
    #[error(
        "resource error: noise pmf needs {atoms} atoms, above the guard of {guard}; \
         use the fastmix recursion for uniform/binary composites"
    )]
    Resource { atoms: usize, guard: usize },

    /// The request is malformed or combines incompatible options.
    #[error("usage error: {0}")]
    Usage(String),

    /// An iterative solver stopped before reaching its tolerance.
    #[error(
        "convergence error: stopped after {iterations} iterations with residual {residual:e} \
         (objective {objective})"
    )]
    Convergence {
        iterations: usize,
        residual: f64,
        objective: f64,
    },

    /// A precondition internal to the library was violated.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
