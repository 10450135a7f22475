//! Truncated formal power series with exact rational coefficients.
//!
//! A series stores a sparse exponent → coefficient map together with a
//! truncation order `trunc`: terms of degree `>= trunc` are *unknown*, not
//! zero. Truncation propagates conservatively — binary operations truncate
//! to the minimum of the operand truncations, and division / composition
//! additionally shrink the window by the order of the divisor / inner
//! series — so a stored coefficient never depends on unknown tail terms.
//!
//! Series also carry an `exact` flag. When set, the stored jet is the whole
//! object (the tail is known to be zero), which is what later certificates
//! (certified winding numbers, polynomial resultants) rely on. The flag
//! degrades to `false` whenever an operation would have to discard a
//! nonzero term or produce a genuinely infinite expansion.
//!
//! Invariants maintained by every constructor and operation:
//! no stored zero coefficients, all stored degrees `< trunc`, `trunc >= 1`.

mod series1;
mod series2;
mod series3;

pub(crate) use series1::pow_rat;
pub use series1::Series1;
pub use series2::Series2;
pub use series3::Series3;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("variable mismatch: expected {expected}, found {found}")]
    VariableMismatch { expected: String, found: String },
    #[error("not a unit: constant term is zero")]
    NotAUnit,
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("inner series has nonzero constant term")]
    InnerConstantTerm,
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    #[error("odd exponent of `{0}` in even-power substitution")]
    OddExponent(String),
}

pub(crate) fn check_var(expected: &str, found: &str) -> Result<(), SeriesError> {
    if expected == found {
        Ok(())
    } else {
        Err(SeriesError::VariableMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        })
    }
}
