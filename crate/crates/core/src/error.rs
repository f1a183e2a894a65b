use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inputs of incompatible shape, base algebra or field.
    #[error("contract violation: {0}")]
    Contract(String),
    /// The data does not have the algebraic structure it claims to have.
    #[error("structural error: {0}")]
    Structural(String),
    /// A builtin family was asked for with unsupported parameters.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// A construction that is guaranteed to succeed did not; indicates a bug
    /// or an earlier invariant breach.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! contract {
    ($($arg:tt)*) => { $crate::error::Error::Contract(format!($($arg)*)) };
}

macro_rules! structural {
    ($($arg:tt)*) => { $crate::error::Error::Structural(format!($($arg)*)) };
}

macro_rules! internal {
    ($($arg:tt)*) => { $crate::error::Error::Internal(format!($($arg)*)) };
}

macro_rules! parameter {
    ($($arg:tt)*) => { $crate::error::Error::Parameter(format!($($arg)*)) };
}

pub(crate) use {contract, internal, parameter, structural};
