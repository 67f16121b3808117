use alloc::string::String;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A quantum number, photon count or parameter is outside its domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested register is too large for dense state vectors.
    #[error("capacity error: mu = {mu} exceeds the limit of {limit} sites")]
    Capacity { mu: u32, limit: u32 },
    /// An input violated a structural precondition (e.g. symmetry).
    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

macro_rules! domain {
    ($($arg:tt)*) => {
        $crate::Error::Domain(alloc::format!($($arg)*))
    };
}
pub(crate) use domain;
