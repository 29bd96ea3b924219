use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::polynomial::leading_sign;
use super::AlgebraError;
use crate::IntPolynomial;

/// Quotient of two integer polynomials in `p`, kept in content-normalized form.
///
/// Normalization divides out the integer gcd of all coefficients of numerator
/// and denominator together and makes the denominator's leading coefficient
/// positive. A zero numerator normalizes to `0/1`. No polynomial gcd is taken,
/// so `p/p^2` and `1/p` stay distinct representations; [`PartialEq`] compares by
/// cross-multiplication and treats them as equal.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    numerator: IntPolynomial,
    denominator: IntPolynomial,
}

/// Behaviour of a rational function as `p → ∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitAtInfinity {
    Zero,
    Finite(BigRational),
    PosInfinity,
    NegInfinity,
}

impl RationalFunction {
    pub fn new(numerator: IntPolynomial, denominator: IntPolynomial) -> Result<Self, AlgebraError> {
        if denominator.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        if numerator.is_zero() {
            return Ok(RationalFunction {
                numerator,
                denominator: IntPolynomial::one(),
            });
        }
        let content = numerator.content().gcd(&denominator.content());
        let mut sign = BigInt::one();
        if leading_sign(&denominator) < 0 {
            sign = -sign;
        }
        let divide = |poly: &IntPolynomial| poly.map(|c| (c / &content) * &sign);
        Ok(RationalFunction {
            numerator: divide(&numerator),
            denominator: divide(&denominator),
        })
    }

    pub fn from_polynomial(poly: IntPolynomial) -> Self {
        Self::new(poly, IntPolynomial::one()).expect("unit denominator")
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.denominator
    }

    /// Structural identity of the normalized representations.
    pub fn is_identical(&self, other: &Self) -> bool {
        self.numerator == other.numerator && self.denominator == other.denominator
    }

    pub fn eval(&self, at: &BigInt) -> Result<BigRational, AlgebraError> {
        let den = self.denominator.eval(at);
        if den.is_zero() {
            return Err(AlgebraError::PoleAtPoint { at: at.clone() });
        }
        Ok(BigRational::new(self.numerator.eval(at), den))
    }

    pub fn limit_at_infinity(&self) -> LimitAtInfinity {
        let Some(num_deg) = self.numerator.degree() else {
            return LimitAtInfinity::Zero;
        };
        let den_deg = self.denominator.degree().expect("nonzero denominator");
        let num_lead = self.numerator.leading_coefficient().expect("nonzero");
        let den_lead = self.denominator.leading_coefficient().expect("nonzero");
        match num_deg.cmp(&den_deg) {
            std::cmp::Ordering::Less => LimitAtInfinity::Zero,
            std::cmp::Ordering::Equal => {
                LimitAtInfinity::Finite(BigRational::new(num_lead.clone(), den_lead.clone()))
            }
            std::cmp::Ordering::Greater => {
                if num_lead.is_positive() == den_lead.is_positive() {
                    LimitAtInfinity::PosInfinity
                } else {
                    LimitAtInfinity::NegInfinity
                }
            }
        }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Polynomial;

    fn int(coeffs: &[i64]) -> IntPolynomial {
        Polynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn content_is_divided_out() {
        let r = RationalFunction::new(int(&[2, 2]), int(&[4, 4])).unwrap();
        assert_eq!(r.numerator(), &int(&[1, 1]));
        assert_eq!(r.denominator(), &int(&[2, 2]));
        // equal to the constant 1/2 even without a polynomial gcd step
        assert_eq!(r, RationalFunction::new(int(&[1]), int(&[2])).unwrap());
    }

    #[test]
    fn denominator_sign_is_normalized() {
        let r = RationalFunction::new(int(&[0, -1]), int(&[0, 0, -1])).unwrap();
        assert_eq!(r.numerator(), &int(&[0, 1]));
        assert_eq!(r.denominator(), &int(&[0, 0, 1]));
    }

    #[test]
    fn zero_numerator_is_canonical() {
        let r = RationalFunction::new(IntPolynomial::zero(), int(&[0, 3])).unwrap();
        assert!(r.numerator().is_zero());
        assert_eq!(r.denominator(), &int(&[1]));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(int(&[1]), IntPolynomial::zero()).unwrap_err(),
            AlgebraError::ZeroDenominator
        );
    }

    #[test]
    fn limits() {
        let twelve =
            RationalFunction::new(int(&[22704, 1053, 1053, 24]), int(&[3023, 134, 134, 2]))
                .unwrap();
        assert_eq!(
            twelve.limit_at_infinity(),
            LimitAtInfinity::Finite(rat(12, 1))
        );
        let deficit = RationalFunction::new(int(&[0, 0, 1]), int(&[0, 0, 0, 1])).unwrap();
        assert_eq!(deficit.limit_at_infinity(), LimitAtInfinity::Zero);
        let unit = RationalFunction::new(int(&[0, 0, 0, 1]), int(&[0, 0, 0, 1])).unwrap();
        assert_eq!(unit.limit_at_infinity(), LimitAtInfinity::Finite(rat(1, 1)));
        let up = RationalFunction::new(int(&[0, 0, -1]), int(&[0, -1])).unwrap();
        assert_eq!(up.limit_at_infinity(), LimitAtInfinity::PosInfinity);
        let down = RationalFunction::new(int(&[0, 0, -1]), int(&[1])).unwrap();
        assert_eq!(down.limit_at_infinity(), LimitAtInfinity::NegInfinity);
    }

    #[test]
    fn evaluation() {
        let r = RationalFunction::new(int(&[1, 1]), int(&[-1, 1])).unwrap();
        assert_eq!(r.eval(&BigInt::from(3)).unwrap(), rat(2, 1));
        assert_eq!(
            r.eval(&BigInt::from(1)).unwrap_err(),
            AlgebraError::PoleAtPoint {
                at: BigInt::from(1)
            }
        );
        let display = RationalFunction::new(
            int(&[3 * 7568, 3 * 351, 3 * 351, 3 * 8]),
            int(&[3023, 134, 134, 2]),
        )
        .unwrap();
        assert_eq!(display.eval(&BigInt::from(5)).unwrap(), rat(57294, 7293));
    }
}
