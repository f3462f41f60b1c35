use thiserror::Error;

use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Exact division failed; `remainder` is the nonzero partial remainder at
    /// the point of failure.
    #[error("not divisible (remainder {remainder})")]
    NotDivisible { remainder: IntPoly },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("exponent {exponent} exceeds budget {budget}")]
    InfeasibleScale { exponent: String, budget: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
