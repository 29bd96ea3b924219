use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::construction::{Construction, SectionCounts};
use super::CoverError;
use crate::group::{FSet, Group, GroupElement};
use crate::picard::{class_c_tilde, class_k_s, exceptional_count, DivisorClass};
use crate::primes::is_prime;
use crate::scalar::Scalar;
use crate::IntPolynomial;

/// Building data `(D, L)` over `S` for one value of `p`.
///
/// `T = BigInt` for a concrete prime and `T = IntPolynomial` for `p` kept as
/// an indeterminate. The classes `q·L_γ = Σ_σ ⟨χ_γ, σ⟩ D_σ` are always stored;
/// `L_γ` itself only when every one of them is divisible by `q` in `T`, which
/// for a concrete `p` is exactly the cover condition. In symbolic mode the
/// division generally fails coefficientwise and only the scaled classes are
/// available; the polynomial identities they produce hold at admissible `p`.
#[derive(Debug, Clone)]
pub struct BuildingData<T> {
    construction: Arc<Construction>,
    p: T,
    k_s: DivisorClass<T>,
    c_tilde: DivisorClass<T>,
    line_classes: Vec<DivisorClass<T>>,
    scaled_bundles: Vec<DivisorClass<T>>,
    bundles: Option<Vec<DivisorClass<T>>>,
}

/// Outcome of the divisibility check `q | Σ_σ ⟨χ_γ, σ⟩ D_σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCheck {
    pub pass: bool,
    pub violations: Vec<GroupElement>,
}

/// `p` prime, `p ≡ −1 (mod q)` and `p ≠ q`.
pub fn check_admissible(q: u32, p: u64) -> Result<(), CoverError> {
    let reject = |reason: &str| {
        Err(CoverError::InadmissibleP {
            p,
            q,
            reason: reason.to_string(),
        })
    };
    if !is_prime(p) {
        return reject("p is not prime");
    }
    if p == q as u64 {
        return reject("p equals q");
    }
    if !(p + 1).is_multiple_of(q as u64) {
        return reject("p is not congruent to -1 mod q");
    }
    Ok(())
}

impl BuildingData<BigInt> {
    /// Building data at an admissible prime. Fails with
    /// `CoverConditionViolated` if any `q·L_γ` is not divisible by `q`.
    pub fn assemble(
        group: &Group,
        p: u64,
        r: SectionCounts,
        f_override: Option<FSet>,
    ) -> Result<Self, CoverError> {
        check_admissible(group.q(), p)?;
        let construction = Arc::new(Construction::new(group, r, f_override)?);
        Self::at_prime(construction, p)
    }

    /// Reuses a construction across primes (the sweep path).
    pub fn at_prime(construction: Arc<Construction>, p: u64) -> Result<Self, CoverError> {
        check_admissible(construction.group().q(), p)?;
        let data = Self::from_parts(construction, BigInt::from(p));
        let check = data.check_cover_condition();
        if !check.pass {
            return Err(CoverError::CoverConditionViolated {
                violations: check.violations,
            });
        }
        Ok(data)
    }
}

impl BuildingData<IntPolynomial> {
    pub fn assemble_symbolic(
        group: &Group,
        r: SectionCounts,
        f_override: Option<FSet>,
    ) -> Result<Self, CoverError> {
        let construction = Arc::new(Construction::new(group, r, f_override)?);
        Ok(Self::from_parts(construction, IntPolynomial::x()))
    }
}

impl<T: Scalar> BuildingData<T> {
    /// Builds every class without checking admissibility or divisibility.
    pub fn from_parts(construction: Arc<Construction>, p: T) -> Self {
        let n = exceptional_count(&p);
        let k_s = class_k_s(&p);
        let c_tilde = class_c_tilde(&p);
        let line_classes: Vec<DivisorClass<T>> = construction
            .distinct_line_counts()
            .iter()
            .map(|&k| DivisorClass::hyperplane_multiple(T::from_integer(&k.into()), n.clone()))
            .collect();

        let mut kinds = Vec::with_capacity(1 + line_classes.len());
        kinds.push(&c_tilde);
        kinds.extend(line_classes.iter());

        let order = construction.group().order();
        let scaled_bundles: Vec<DivisorClass<T>> = (0..order)
            .into_par_iter()
            .map(|gi| {
                let terms = construction
                    .weights(gi)
                    .iter()
                    .map(|&w| T::from_i64(w))
                    .zip(kinds.iter().copied());
                DivisorClass::linear_combination(terms).expect("shared basis")
            })
            .collect();

        let q = BigInt::from(construction.group().q());
        let bundles = scaled_bundles
            .iter()
            .map(|c| c.divide_exact(&q).ok())
            .collect::<Option<Vec<_>>>();

        BuildingData {
            construction,
            p,
            k_s,
            c_tilde,
            line_classes,
            scaled_bundles,
            bundles,
        }
    }

    pub fn construction(&self) -> &Arc<Construction> {
        &self.construction
    }

    pub fn group(&self) -> &Group {
        self.construction.group()
    }

    pub fn p(&self) -> &T {
        &self.p
    }

    pub fn q_scalar(&self) -> T {
        T::from_i64(self.group().q() as i64)
    }

    /// `p^2 + p + 1`.
    pub fn exceptional_count(&self) -> &T {
        &self.k_s.n
    }

    pub fn k_s(&self) -> &DivisorClass<T> {
        &self.k_s
    }

    pub fn c_tilde(&self) -> &DivisorClass<T> {
        &self.c_tilde
    }

    /// `D(σ)`: zero at the origin, `C̃` at `e1`, `(q·r_σ + m_σ)·H` on
    /// `F∖{0, e1}`, zero elsewhere.
    pub fn divisor(&self, sigma: &GroupElement) -> DivisorClass<T> {
        let n = self.exceptional_count().clone();
        if *sigma == self.group().unit(1) {
            return self.c_tilde.clone();
        }
        match self.construction.line_count(sigma) {
            Some(k) => DivisorClass::hyperplane_multiple(T::from_integer(&k.into()), n),
            None => DivisorClass::zero(n),
        }
    }

    /// `q·L_γ = Σ_σ ⟨χ_γ, σ⟩ D_σ`.
    pub fn scaled_bundle(&self, gamma: &GroupElement) -> &DivisorClass<T> {
        &self.scaled_bundles[self.group().index_of(gamma)]
    }

    pub(crate) fn scaled_bundles(&self) -> &[DivisorClass<T>] {
        &self.scaled_bundles
    }

    /// `L_γ`, present when the cover condition holds in `T`.
    pub fn bundle(&self, gamma: &GroupElement) -> Option<&DivisorClass<T>> {
        self.bundles
            .as_ref()
            .map(|b| &b[self.group().index_of(gamma)])
    }

    pub(crate) fn bundles(&self) -> Option<&[DivisorClass<T>]> {
        self.bundles.as_deref()
    }

    pub fn check_cover_condition(&self) -> CoverCheck {
        let q = BigInt::from(self.group().q());
        let violations: Vec<GroupElement> = self
            .scaled_bundles
            .iter()
            .enumerate()
            .filter(|(_, c)| c.divide_exact(&q).is_err())
            .map(|(gi, _)| self.group().element_at(gi))
            .collect();
        CoverCheck {
            pass: violations.is_empty(),
            violations,
        }
    }

    /// `ΣD = (p²+p+1 + Σ_{F∖{0,e1}} (q·r_σ + m_σ))·H − (p+1)·ΣE_i`, computed
    /// from that closed form and cross-checked against adding up `D(σ)` over
    /// all of `G`.
    pub fn sum_divisors(&self) -> Result<DivisorClass<T>, CoverError> {
        let n = self.exceptional_count().clone();
        let total = BigInt::from(self.construction.total_line_count());
        let closed = DivisorClass::new(
            n.clone() + T::from_integer(&total),
            -(self.p.clone() + T::one()),
            n.clone(),
        );
        let mut direct = DivisorClass::zero(n);
        for sigma in self.group().elements() {
            let d = self.divisor(&sigma);
            if !d.is_zero() {
                direct = direct.try_add(&d)?;
            }
        }
        if direct != closed {
            return Err(CoverError::OracleMismatch {
                what: "sum of branch divisors".to_string(),
            });
        }
        Ok(closed)
    }

    /// Line classes `k·H`, one per distinct line count.
    pub fn line_classes(&self) -> &[DivisorClass<T>] {
        &self.line_classes
    }
}
