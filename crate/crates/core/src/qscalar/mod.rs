//! Exact arithmetic in `Q(q)` and its specializations.

mod laurent;
mod poly;
mod root;
mod scalar;

use thiserror::Error;

pub use laurent::{qint, LaurentPoly};
pub use root::{
    Ball, Certified, RootContext, RootValue, DEFAULT_PRECISION_CAP, MIN_PRECISION_BITS,
    PRECISION_ENV,
};
pub use scalar::QScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("divergent limit at q = 1")]
    DivergentLimit,
    #[error("denominator vanishes at this root (N = {0})")]
    DenominatorVanishes(u64),
    #[error("precision exhausted at {0} bits")]
    PrecisionExhausted(u32),
    #[error("root order must be a positive even integer, got {0}")]
    BadOrder(u64),
    #[error("precision must be at least 128 bits, got {0}")]
    PrecisionTooLow(u32),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Shorthand for `[n]` as a [`QScalar`].
pub fn q(n: i64) -> QScalar {
    QScalar::qint(n)
}
