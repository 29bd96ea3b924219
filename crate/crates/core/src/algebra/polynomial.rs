use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Ring, Scalar};

/// Dense univariate polynomial in the indeterminate `p`.
///
/// `coeffs[k]` is the coefficient of `p^k`. The vector is always trimmed so the
/// last entry is nonzero; the zero polynomial has no coefficients at all. With
/// that invariant the derived equality is structural equality of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `p`.
    pub fn x() -> Self {
        Polynomial {
            coeffs: vec![T::zero(), T::one()],
        }
    }

    /// Ascending coefficients, trimmed.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `p^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * at.clone() + c.clone())
    }

    pub fn scale(&self, by: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * by.clone()).collect())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| f(self.coeff(k), other.coeff(k))).collect())
    }

    fn convolve(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl Polynomial<BigInt> {
    /// Nonnegative gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn to_rational(&self) -> Polynomial<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }
}

impl Polynomial<BigRational> {
    /// Writes `self` as `poly / denom` with `poly` integral and `denom > 0`
    /// the least common denominator of the coefficients.
    pub fn clear_denominators(&self) -> (Polynomial<BigInt>, BigInt) {
        let denom = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let poly = Polynomial::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(denom.clone())).to_integer())
                .collect(),
        );
        (poly, denom)
    }
}

impl<T: Ring> Zero for Polynomial<T> {
    fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Ring> One for Polynomial<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Scalar> Scalar for Polynomial<T> {
    fn from_integer(v: &BigInt) -> Self {
        Self::constant(T::from_integer(v))
    }

    fn div_integer_exact(&self, d: &BigInt) -> Option<Self> {
        self.coeffs
            .iter()
            .map(|c| c.div_integer_exact(d))
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }
}

impl<T: Ring> Add for Polynomial<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a + b)
    }
}

impl<T: Ring> Sub for Polynomial<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a - b)
    }
}

impl<T: Ring> Mul for Polynomial<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.convolve(&rhs)
    }
}

impl<T: Ring> Neg for Polynomial<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Polynomial {
            coeffs: self.coeffs.into_iter().map(Neg::neg).collect(),
        }
    }
}

impl<'a, T: Ring> Add<&'a Polynomial<T>> for &'a Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Self) -> Polynomial<T> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<'a, T: Ring> Sub<&'a Polynomial<T>> for &'a Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Self) -> Polynomial<T> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<'a, T: Ring> Mul<&'a Polynomial<T>> for &'a Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: Self) -> Polynomial<T> {
        self.convolve(rhs)
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Polynomial<T> {
    /// Descending powers of `p`, e.g. `8p^3 + 351p^2 - p + 7`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let needs_parens = magnitude.contains('/') && k > 0;
            match (k, magnitude.as_str()) {
                (0, m) => write!(f, "{m}")?,
                (_, "1") => {}
                (_, m) if needs_parens => write!(f, "({m})")?,
                (_, m) => write!(f, "{m}")?,
            }
            match k {
                0 => {}
                1 => write!(f, "p")?,
                _ => write!(f, "p^{k}")?,
            }
        }
        Ok(())
    }
}

/// Sign of the leading coefficient, zero for the zero polynomial.
pub(crate) fn leading_sign(poly: &Polynomial<BigInt>) -> i8 {
    match poly.leading_coefficient() {
        None => 0,
        Some(c) if c.is_negative() => -1,
        Some(_) => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::IntPolynomial;

    fn int(coeffs: &[i64]) -> IntPolynomial {
        Polynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn binomial_square() {
        let p1 = int(&[1, 1]);
        assert_eq!(&p1 * &p1, int(&[1, 2, 1]));
    }

    #[test]
    fn self_difference_is_zero() {
        let a = int(&[3, -2, 0, 5]);
        let d = &a - &a;
        assert!(d.is_zero());
        assert_eq!(d.degree(), None);
    }

    #[test]
    fn cubic_product_matches_hand_expansion() {
        let prod = int(&[1, 1, 1]) * int(&[1, 1]);
        assert_eq!(prod, int(&[1, 2, 2, 1]));
        let two = BigInt::from(2);
        assert_eq!(
            int(&[1, 1, 1]).eval(&two) * int(&[1, 1]).eval(&two),
            BigInt::from(21)
        );
        assert_eq!(prod.eval(&two), BigInt::from(21));
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let a = int(&[1, 2, 0, 0]);
        assert_eq!(a.degree(), Some(1));
        assert_eq!(a.coeffs().len(), 2);
        assert_eq!(int(&[0, 0]), IntPolynomial::zero());
    }

    #[test]
    fn content_and_clear_denominators() {
        assert_eq!(int(&[4, -6, 10]).content(), BigInt::from(2));
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let third = BigRational::new(BigInt::from(-1), BigInt::from(3));
        let q = Polynomial::new(vec![half, third]);
        let (poly, denom) = q.clear_denominators();
        assert_eq!(denom, BigInt::from(6));
        assert_eq!(poly, int(&[3, -2]));
    }

    #[test]
    fn display_descending() {
        assert_eq!(
            int(&[7568, 351, 351, 8]).to_string(),
            "8p^3 + 351p^2 + 351p + 7568"
        );
        assert_eq!(int(&[-1, 0, -1]).to_string(), "-p^2 - 1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn exact_integer_division() {
        let a = int(&[6, -3, 9]);
        assert_eq!(
            a.div_integer_exact(&BigInt::from(3)),
            Some(int(&[2, -1, 3]))
        );
        assert_eq!(a.div_integer_exact(&BigInt::from(2)), None);
    }
}
