use alloc::string::String;
use core::fmt;

/// Error type shared by every module.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    Domain(String),
    /// A quadrature or iteration failed to reach its accuracy target.
    Accuracy(String),
    /// Inconsistent or unusable configuration (grids, cutoffs, ...).
    Config(String),
    /// A symmetry precondition was violated (e.g. non-antisymmetric
    /// coefficient function on a non-trivial-stabilizer orbit).
    Symmetry(String),
    /// Requested computation is outside the supported problem sizes.
    Unsupported(String),
    /// Internal consistency check failed (indicates a bug).
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Accuracy(m) => write!(f, "accuracy error: {m}"),
            Error::Config(m) => write!(f, "configuration error: {m}"),
            Error::Symmetry(m) => write!(f, "symmetry violation: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
            Error::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
