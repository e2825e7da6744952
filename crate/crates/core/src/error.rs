use thiserror::Error;

/// Errors raised by the exact kernels, the inverse constructors and the
/// condition suites.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at `{token}`: {message}")]
    Parse { token: String, message: String },

    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    Shape {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),

    #[error("matrix is singular (rank {rank} of {size})")]
    Singular { rank: usize, size: usize },

    #[error("zero matrix has no full-rank factorization")]
    ZeroMatrix,

    #[error("matrix is not group invertible (index {index})")]
    NotGroupInvertible { index: usize },

    #[error("matrix is not core invertible (index {index})")]
    NotCoreInvertible { index: usize },

    /// A constructed object failed its own certificate. Always a bug.
    #[error("verification failed for {what}: {detail}")]
    Verification { what: String, detail: String },

    #[error("precondition violated: {0}")]
    Domain(String),

    #[error("infeasible generator profile: {0}")]
    Profile(String),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
