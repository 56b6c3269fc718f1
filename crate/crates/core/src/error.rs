use alloc::string::String;
use core::fmt;

/// Errors raised by the algebra and enumeration routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An input violates a documented precondition (non-prime `p`, reducible
    /// modulus, `gcd(n, q) != 1`, ...).
    Precondition(String),
    /// Operands belong to different fields or have mismatched shapes.
    Domain(String),
    /// Division by zero or a non-invertible element.
    DivisionByZero,
    /// An exhaustive search would exceed the configured ceiling.
    GuardExceeded { required: u128, guard: u128 },
    /// A result does not fit in the integer width used for exact counts.
    Overflow,
    /// The requested path is deliberately not implemented.
    Unsupported(String),
    /// An internal consistency check failed. Always a bug.
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::GuardExceeded { required, guard } => write!(
                f,
                "search size {required} exceeds the guard {guard}; raise the guard to at least {required}"
            ),
            Error::Overflow => f.write_str("integer overflow in exact count"),
            Error::Unsupported(msg) => write!(f, "not supported: {msg}"),
            Error::Internal(msg) => write!(f, "internal consistency error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

macro_rules! precondition {
    ($($arg:tt)*) => {
        $crate::Error::Precondition(alloc::format!($($arg)*))
    };
}
pub(crate) use precondition;
