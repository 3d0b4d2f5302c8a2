use thiserror::Error;

/// Errors raised by the arithmetic, classification and search layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("radicand mismatch: sqrt({0}) vs sqrt({1})")]
    RadicandMismatch(u64, u64),

    #[error("product identity violated: xyz = {xyz} but x'y'z' = {xyz_prime}")]
    ProductMismatch { xyz: i128, xyz_prime: i128 },

    #[error("sign mismatch in column {column}: {top} and {bottom} differ in sign")]
    SignMismatch { column: usize, top: i64, bottom: i64 },

    #[error("triple is not in S-hat: {0}")]
    NotInShat(String),

    #[error("matrix is not cluster-cyclic")]
    NotClusterCyclic,

    #[error("triple is not cluster-positive (reached {0})")]
    NotClusterPositive(String),

    #[error("iteration cap {cap} exceeded; last iterate {last}")]
    IterationCapExceeded { cap: usize, last: String },

    #[error("search budget {0} exceeded without finding a negative entry")]
    SearchBudgetExceeded(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid mutation path: {0}")]
    InvalidPath(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("search cancelled")]
    Cancelled,
}

impl Error {
    /// Resource errors (overflow, exhausted caps, cancellation) as opposed to
    /// domain errors in the input itself.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::Overflow(_)
                | Error::IterationCapExceeded { .. }
                | Error::SearchBudgetExceeded(_)
                | Error::Cancelled
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
