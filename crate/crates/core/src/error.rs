use std::fmt;

/// Error category, mapped to CLI exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad arguments or malformed input (exit 2).
    Validation,
    /// A feasibility guard refused the computation (exit 3).
    Guard,
    /// An internal consistency check failed (exit 4).
    Check,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Validation => 2,
            ErrorKind::Guard => 3,
            ErrorKind::Check => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("size guard: {what} = {size} exceeds limit {limit}")]
    SizeGuard {
        what: &'static str,
        size: f64,
        limit: f64,
    },
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("the {n}-particle sector is unpopulated (norm {norm:e})")]
    ZeroNorm { n: u32, norm: f64 },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("matrix is not Hermitian: |A[{row}][{col}] - conj(A[{col}][{row}])| = {defect:e}")]
    NotHermitian { row: usize, col: usize, defect: f64 },
    #[error("check failed: {0}")]
    Check(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::SizeGuard { .. } | Error::ZeroNorm { .. } => ErrorKind::Guard,
            Error::Check(_) => ErrorKind::Check,
            _ => ErrorKind::Validation,
        }
    }

    pub(crate) fn range(msg: impl fmt::Display) -> Self {
        Error::Range(msg.to_string())
    }

    pub(crate) fn guard(what: &'static str, size: f64, limit: f64) -> Self {
        Error::SizeGuard { what, size, limit }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
