use alloc::string::String;
use core::fmt;

/// Error type shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A caller-supplied parameter is outside its documented range.
    InvalidParameter(String),
    /// A text input could not be tokenized; `line` is 1-based.
    Parse { line: usize, message: String },
    /// Structured input violated an invariant (self-loop, duplicate edge,
    /// non-orthonormal basis, ...).
    Validation(String),
    /// The requested value is undefined for this input (empty cut set,
    /// zero-volume ratio, ...).
    Domain(String),
    /// The input is too large for exhaustive enumeration.
    Capacity(String),
    /// An iterative numeric routine failed to converge.
    Numerical(String),
    /// Every sampled partition was discarded during a rounding search.
    SearchFailed { trials: u64, discarded: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::Parse { line, message } => write!(f, "parse error at line {line}: {message}"),
            Error::Validation(msg) => write!(f, "validation error: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Capacity(msg) => write!(f, "capacity error: {msg}"),
            Error::Numerical(msg) => write!(f, "numerical error: {msg}"),
            Error::SearchFailed { trials, discarded } => write!(
                f,
                "search failed: all {discarded} of {trials} sampled partitions were discarded"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
