//! Exact truncated two-variable series arithmetic.
//!
//! No floating point is used anywhere in this crate.

pub mod delta;
pub mod rational;
pub mod series;

pub use delta::DeltaChar;
pub use rational::{fmt_rat, int, parse_rat, rat, Rational};
pub use series::{Monomial, Series2, SeriesJson, TermJson};

/// Failures of series arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("non-invertible leading term: {0}")]
    NonInvertibleLeadingTerm(String),
    #[error("sign (-1)^a undefined for z-exponent {0}")]
    NonIntegralSignExponent(String),
    #[error("parse error: {0}")]
    Parse(String),
}
