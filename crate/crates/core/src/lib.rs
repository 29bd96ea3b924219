//! Exact Chern invariants of `(Z/q)^n`-covers of the projective plane blown
//! up at all of its `F_p`-rational points.
//!
//! The branch divisor is the strict transform of all `p^2 + p + 1` rational
//! lines together with general lines chosen so the cover condition holds.
//! Everything is computed exactly, either at a concrete admissible prime
//! (`p ≡ −1 mod q`) or with `p` kept as an indeterminate.
//!
//! The arithmetic is generic over an exact [`Scalar`] ring; the aliases below
//! name the instantiations used throughout.

pub mod algebra;
pub mod cover;
pub mod group;
pub mod picard;
pub mod plane;
pub mod primes;
pub mod scalar;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use algebra::{AlgebraError, LimitAtInfinity, Polynomial, RationalFunction};
pub use cover::{BuildingData, CoverError, InvariantReport, SectionCounts, SymbolicReport};
pub use group::{FSet, Group, GroupElement, MultiplicityMap};
pub use picard::DivisorClass;
pub use scalar::{Ring, Scalar};

/// Polynomial in `p` with integer coefficients.
pub type IntPolynomial = Polynomial<BigInt>;
/// Polynomial in `p` with rational coefficients.
pub type RatPolynomial = Polynomial<BigRational>;
/// Divisor class at a concrete prime.
pub type NumericClass = DivisorClass<BigInt>;
/// Divisor class with polynomial coefficients in `p`.
pub type SymbolicClass = DivisorClass<IntPolynomial>;
/// Building data at a concrete prime.
pub type NumericData = BuildingData<BigInt>;
/// Building data with `p` symbolic.
pub type SymbolicData = BuildingData<IntPolynomial>;
