//! Exact arithmetic kernel: the parameter ring `ℚ[θ]`, multivariate
//! polynomials, factored rational functions, one-variable rational
//! functions and truncated series.

mod mpoly;
mod ratfn;
mod series;
mod upoly;

use num_rational::BigRational;
use thiserror::Error;

pub use mpoly::{MPoly, Monomial};
pub use ratfn::{FactorMultiset, FactoredRatFn, LinFactor};
pub use series::TruncSeries;
pub use upoly::{UPoly, URatFn};

/// Polynomials in the formal-group-law parameter `θ` over `ℚ`.
pub type ThetaScalar = UPoly<BigRational>;

/// Rational functions in one variable over `ℚ`.
pub type QRatFn = URatFn<BigRational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("operands use different values of theta")]
    ThetaMismatch,
    #[error("substitution leaves the factor family: {0}")]
    LeavesFamily(String),
    #[error("series truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("series has zero linear coefficient")]
    ZeroLinearTerm,
}
