//! Coefficient rings.
//!
//! Everything in this crate is generic over an exact commutative ring. The
//! two instantiations that matter are [`BigInt`] (a concrete prime `p`) and
//! [`IntPolynomial`](crate::IntPolynomial) (symbolic `p`). [`BigRational`] and
//! rational-coefficient polynomials show up where a division by `q` cannot be
//! kept integral. No floating-point type implements [`Scalar`].

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact commutative ring with unity.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
}

impl<T> Ring for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + Send
        + Sync
{
}

/// A ring that contains the integers and supports exact division by one.
pub trait Scalar: Ring {
    fn from_integer(v: &BigInt) -> Self;

    /// `self / d` when the quotient exists in this ring, `None` otherwise.
    fn div_integer_exact(&self, d: &BigInt) -> Option<Self>;

    fn from_i64(v: i64) -> Self {
        Self::from_integer(&BigInt::from(v))
    }
}

impl Scalar for BigInt {
    fn from_integer(v: &BigInt) -> Self {
        v.clone()
    }

    fn div_integer_exact(&self, d: &BigInt) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (quot, rem) = self.div_rem(d);
        rem.is_zero().then_some(quot)
    }
}

impl Scalar for BigRational {
    fn from_integer(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn div_integer_exact(&self, d: &BigInt) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        Some(self / BigRational::from_integer(d.clone()))
    }
}
