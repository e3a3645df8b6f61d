use alloc::string::String;
use core::fmt;

/// Errors produced by the library.
///
/// Every failure mode carries enough context to be rendered for a CLI user;
/// the variants map onto distinct process exit codes in the command line
/// front end.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A construction exceeds the supported size (desk-scale groups only).
    Capacity { what: String, limit: usize, got: usize },
    /// The operation is not implemented for this group or input class.
    Unsupported(String),
    /// Two values live over different groups or have incompatible shapes.
    Mismatch(String),
    /// A numerical integrity check failed (residual above tolerance).
    Numerical { context: String, residual: f64, tolerance: f64 },
    /// An operator that must be invertible is singular.
    Singular(String),
    /// Input failed a verification precondition (e.g. not coherent).
    Rejected { context: String, residual: f64 },
    /// Malformed user input.
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Capacity { what, limit, got } => {
                write!(f, "capacity exceeded for {what}: {got} > {limit}")
            }
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
            Error::Mismatch(what) => write!(f, "structural mismatch: {what}"),
            Error::Numerical { context, residual, tolerance } => write!(
                f,
                "numerical integrity failure in {context}: residual {residual:.3e} exceeds {tolerance:.3e}"
            ),
            Error::Singular(what) => write!(f, "singular operator: {what}"),
            Error::Rejected { context, residual } => {
                write!(f, "input rejected by {context}: residual {residual:.3e}")
            }
            Error::Invalid(what) => write!(f, "invalid input: {what}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
