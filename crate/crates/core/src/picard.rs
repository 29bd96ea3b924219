//! Divisor classes on the blowup `S` of the plane at all `N = p^2 + p + 1`
//! rational points.
//!
//! Every class the construction touches is symmetric in the exceptional
//! curves, so a class is stored as `h·H + e·(E_1 + … + E_N)` together with
//! `N`. The intersection form is `H^2 = 1`, `E_i^2 = -1`, all mixed products
//! zero, which collapses to `a·b = a.h·b.h − N·a.e·b.e`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::scalar::Scalar;
use crate::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PicardError {
    #[error("divisor classes live on blowups at different numbers of points")]
    MismatchedBasis,
    #[error("class is not divisible by {divisor}")]
    NotDivisible { divisor: BigInt },
    #[error("linear combination with no terms")]
    EmptyCombination,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass<T> {
    /// Coefficient of the hyperplane class `H`.
    pub h: T,
    /// Common coefficient of every exceptional curve `E_i`.
    pub e: T,
    /// Number of exceptional curves.
    pub n: T,
}

/// `p^2 + p + 1`, the number of rational points of the plane.
pub fn exceptional_count<T: Scalar>(p: &T) -> T {
    p.clone() * p.clone() + p.clone() + T::one()
}

/// Canonical class `K_S = −3H + ΣE_i`.
pub fn class_k_s<T: Scalar>(p: &T) -> DivisorClass<T> {
    DivisorClass {
        h: T::from_i64(-3),
        e: T::one(),
        n: exceptional_count(p),
    }
}

/// Strict transform of the union of all rational lines:
/// `(p^2+p+1)H − (p+1)ΣE_i`.
pub fn class_c_tilde<T: Scalar>(p: &T) -> DivisorClass<T> {
    let n = exceptional_count(p);
    DivisorClass {
        h: n.clone(),
        e: -(p.clone() + T::one()),
        n,
    }
}

impl<T: Scalar> DivisorClass<T> {
    pub fn new(h: T, e: T, n: T) -> Self {
        DivisorClass { h, e, n }
    }

    pub fn zero(n: T) -> Self {
        DivisorClass {
            h: T::zero(),
            e: T::zero(),
            n,
        }
    }

    /// `k·H`.
    pub fn hyperplane_multiple(k: T, n: T) -> Self {
        DivisorClass {
            h: k,
            e: T::zero(),
            n,
        }
    }

    /// `ΣE_i`.
    pub fn exceptional_sum(n: T) -> Self {
        DivisorClass {
            h: T::zero(),
            e: T::one(),
            n,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.h.is_zero() && self.e.is_zero()
    }

    fn same_basis(&self, other: &Self) -> Result<(), PicardError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(PicardError::MismatchedBasis)
        }
    }

    pub fn intersect(&self, other: &Self) -> Result<T, PicardError> {
        self.same_basis(other)?;
        Ok(self.h.clone() * other.h.clone() - self.n.clone() * self.e.clone() * other.e.clone())
    }

    /// Self-intersection.
    pub fn square(&self) -> T {
        self.intersect(self).expect("same basis")
    }

    pub fn scale(&self, by: &T) -> Self {
        DivisorClass {
            h: by.clone() * self.h.clone(),
            e: by.clone() * self.e.clone(),
            n: self.n.clone(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PicardError> {
        self.same_basis(other)?;
        Ok(DivisorClass {
            h: self.h.clone() + other.h.clone(),
            e: self.e.clone() + other.e.clone(),
            n: self.n.clone(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PicardError> {
        self.try_add(&other.scale(&-T::one()))
    }

    pub fn linear_combination<'a, I>(terms: I) -> Result<Self, PicardError>
    where
        I: IntoIterator<Item = (T, &'a DivisorClass<T>)>,
        T: 'a,
    {
        let mut terms = terms.into_iter();
        let (k, first) = terms.next().ok_or(PicardError::EmptyCombination)?;
        terms.try_fold(first.scale(&k), |acc, (k, class)| {
            acc.try_add(&class.scale(&k))
        })
    }

    /// Componentwise exact quotient; fails unless `d` divides both
    /// coefficients in `T`.
    pub fn divide_exact(&self, d: &BigInt) -> Result<Self, PicardError> {
        let not_divisible = || PicardError::NotDivisible { divisor: d.clone() };
        Ok(DivisorClass {
            h: self.h.div_integer_exact(d).ok_or_else(not_divisible)?,
            e: self.e.div_integer_exact(d).ok_or_else(not_divisible)?,
            n: self.n.clone(),
        })
    }
}

impl DivisorClass<IntPolynomial> {
    /// Specialize a symbolic class at `p = at`.
    pub fn eval_at(&self, at: &BigInt) -> DivisorClass<BigInt> {
        DivisorClass {
            h: self.h.eval(at),
            e: self.e.eval(at),
            n: self.n.eval(at),
        }
    }
}

#[cfg(test)]
mod tests {
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn class(h: i64, e: i64, n: i64) -> DivisorClass<BigInt> {
        DivisorClass::new(big(h), big(e), big(n))
    }

    #[test]
    fn canonical_class() {
        assert_eq!(class_k_s(&big(5)), class(-3, 1, 31));
        assert_eq!(class_k_s(&big(2)), class(-3, 1, 7));
        let sym = class_k_s(&IntPolynomial::x());
        assert_eq!(sym.n, IntPolynomial::new(vec![big(1), big(1), big(1)]));
        assert_eq!(sym.h, IntPolynomial::constant(big(-3)));
        assert_eq!(sym.e, IntPolynomial::one());
    }

    #[test]
    fn strict_transform_class() {
        assert_eq!(class_c_tilde(&big(2)), class(7, -3, 7));
        assert_eq!(class_c_tilde(&big(5)), class(31, -6, 31));
        let sym = class_c_tilde(&IntPolynomial::x());
        assert_eq!(sym.e, IntPolynomial::new(vec![big(-1), big(-1)]));
    }

    #[test]
    fn intersections() {
        let k = class_k_s(&big(5));
        assert_eq!(k.square(), big(-22));
        assert_eq!(class(1, 0, 31).square(), big(1));
        // seven disjoint lines on the Fano blowup, each of self-intersection 1 - 3
        assert_eq!(class_c_tilde(&big(2)).square(), big(7 * (1 - 3)));
        assert_eq!(
            class(1, 0, 7).intersect(&class(1, 0, 13)).unwrap_err(),
            PicardError::MismatchedBasis
        );
    }

    #[test]
    fn combinations() {
        let k = class_k_s(&big(2));
        let c = class_c_tilde(&big(2));
        let sum = DivisorClass::linear_combination([(big(1), &k), (big(1), &c)]).unwrap();
        assert_eq!(sum, class(4, -2, 7));
        let zero = DivisorClass::linear_combination([(big(0), &c)]).unwrap();
        assert_eq!(zero, DivisorClass::zero(big(7)));
        let h3 = DivisorClass::linear_combination([(big(3), &class(1, 0, 7))]).unwrap();
        assert_eq!(h3, class(3, 0, 7));
        let none: [(BigInt, &DivisorClass<BigInt>); 0] = [];
        assert_eq!(
            DivisorClass::linear_combination(none).unwrap_err(),
            PicardError::EmptyCombination
        );
    }

    #[test]
    fn exact_division() {
        assert_eq!(
            class(6, -3, 7).divide_exact(&big(3)).unwrap(),
            class(2, -1, 7)
        );
        assert_eq!(
            class(7, -3, 7).divide_exact(&big(3)).unwrap_err(),
            PicardError::NotDivisible { divisor: big(3) }
        );
    }

    #[test]
    fn symbolic_matches_numeric() {
        let x = IntPolynomial::x();
        let k_sym = class_k_s(&x);
        let c_sym = class_c_tilde(&x);
        let kc = k_sym.intersect(&c_sym).unwrap();
        let cc = c_sym.square();
        for p0 in [2i64, 3, 5, 11, 23] {
            let p = big(p0);
            assert_eq!(k_sym.eval_at(&p), class_k_s(&p));
            assert_eq!(
                kc.eval(&p),
                class_k_s(&p).intersect(&class_c_tilde(&p)).unwrap()
            );
            assert_eq!(cc.eval(&p), class_c_tilde(&p).square());
        }
        assert!(IntPolynomial::zero().is_zero());
    }

    fn small_class(n: i64) -> impl Strategy<Value = DivisorClass<BigInt>> {
        (-50i64..50, -50i64..50).prop_map(move |(h, e)| class(h, e, n))
    }

    proptest! {
        #[test]
        fn intersection_is_symmetric_and_bilinear(
            a in small_class(31),
            b in small_class(31),
            c in small_class(31),
            s in -20i64..20,
            t in -20i64..20,
        ) {
            prop_assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
            let combo = DivisorClass::linear_combination([(big(s), &a), (big(t), &b)]).unwrap();
            let lhs = combo.intersect(&c).unwrap();
            let rhs = big(s) * a.intersect(&c).unwrap() + big(t) * b.intersect(&c).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn adjunction_parity_of_any_class(l in small_class(31)) {
            let k = class_k_s(&big(5));
            let v = l.intersect(&l.try_add(&k).unwrap()).unwrap();
            prop_assert!((v % big(2)).is_zero());
        }
    }
}
