//! Exact univariate polynomials and rational functions in `p`.

mod polynomial;
mod rational_function;

pub use polynomial::Polynomial;
pub use rational_function::{LimitAtInfinity, RationalFunction};

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("rational function with zero denominator")]
    ZeroDenominator,
    #[error("denominator vanishes at p = {at}")]
    PoleAtPoint { at: BigInt },
}
