//! Chern invariants of the cover and the certificates around them.
//!
//! For a `(Z/q)^n`-cover `S̃ → S` with building data `(D, L)`:
//!
//! * `K̃² = q^n (K_S + (q−1)/q · ΣD)² = q^(n−2) (q·K_S + (q−1)·ΣD)²`
//! * `χ(O_S̃) = q^n χ(O_S) + ½ Σ_γ L_γ·(L_γ + K_S)`, with `χ(O_S) = 1` since
//!   `S` is a blowup of the plane.
//!
//! `Σ_γ L_γ·(L_γ + K_S)` is computed twice: by intersecting the classes
//! `q·L_γ` on the lattice, and by the closed expansion
//! `(γ₁N + f)(−3q + γ₁N + f) + γ₁(p+1)(q − γ₁(p+1))N` summed over `γ`. Both
//! carry a factor `q²`; any disagreement is an `OracleMismatch`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::building::BuildingData;
use super::construction::SectionCounts;
use super::CoverError;
use crate::algebra::{LimitAtInfinity, RationalFunction};
use crate::group::{FSet, Group, GroupElement};
use crate::picard::DivisorClass;
use crate::scalar::Scalar;
use crate::{IntPolynomial, RatPolynomial};

/// `q^(n−2)(q²−1)`, the `p³` coefficient of `K̃²`.
pub fn expected_k_tilde_leading(q: u32, n: usize) -> BigInt {
    let q = BigInt::from(q);
    num_traits::pow(q.clone(), n - 2) * (&q * &q - 1)
}

/// `q^(n−2)(q²−1)/12`, the `p³` coefficient of `χ(O_S̃)`.
pub fn expected_chi_leading(q: u32, n: usize) -> BigRational {
    BigRational::new(expected_k_tilde_leading(q, n), BigInt::from(12))
}

/// `q^(n−2)(q²−1)/6`, the `p³` coefficient of `Σ L·(L+K_S)`.
pub fn expected_self_product_leading(q: u32, n: usize) -> BigRational {
    BigRational::new(expected_k_tilde_leading(q, n), BigInt::from(6))
}

impl<T: Scalar> BuildingData<T> {
    /// `q^(n−2)·(q·K_S + (q−1)·ΣD)²`.
    pub fn k_tilde_squared(&self) -> Result<T, CoverError> {
        let q = self.q_scalar();
        let sum = self.sum_divisors()?;
        let combo = DivisorClass::linear_combination([
            (q.clone(), self.k_s()),
            (q.clone() - T::one(), &sum),
        ])?;
        let n = self.group().n();
        let power = (0..n - 2).fold(T::one(), |acc, _| acc * q.clone());
        Ok(power * combo.square())
    }

    /// The closed expansion for character index `gi`, i.e.
    /// `q²·L_γ·(L_γ + K_S)` without forming `L_γ`.
    fn expansion_term(&self, gi: usize) -> T {
        let c = self.construction();
        let gamma = self.group().element_at(gi);
        let q = self.q_scalar();
        let gamma1 = T::from_i64(gamma.coords()[0] as i64);
        let f = T::from_integer(&BigInt::from(c.f_value_at(gi)));
        let n = self.exceptional_count().clone();
        let p1 = self.p().clone() + T::one();
        let x = gamma1.clone() * n.clone() + f;
        let three_q = T::from_i64(3) * q.clone();
        x.clone() * (x - three_q) + gamma1.clone() * p1.clone() * (q - gamma1 * p1) * n
    }

    /// `q²·Σ_γ L_γ·(L_γ + K_S)`, agreed on by the lattice path and the
    /// expansion path (and, when `L_γ` is integral, by intersecting `L_γ`
    /// directly).
    pub fn scaled_self_product_sum(&self) -> Result<T, CoverError> {
        let q = self.q_scalar();
        let qk = self.k_s().scale(&q);
        let order = self.group().order();

        let lattice = self
            .scaled_bundles()
            .par_iter()
            .map(|m| m.intersect(&m.try_add(&qk)?))
            .try_reduce(T::zero, |a, b| Ok(a + b))?;

        let expansion = (0..order)
            .into_par_iter()
            .map(|gi| self.expansion_term(gi))
            .reduce(T::zero, |a, b| a + b);

        if lattice != expansion {
            return Err(CoverError::OracleMismatch {
                what: "lattice and expansion values of Σ L·(L+K_S)".to_string(),
            });
        }

        if let Some(bundles) = self.bundles() {
            let direct = bundles
                .par_iter()
                .map(|l| l.intersect(&l.try_add(self.k_s())?))
                .try_reduce(T::zero, |a, b| Ok(a + b))?;
            if direct * q.clone() * q != lattice {
                return Err(CoverError::OracleMismatch {
                    what: "integral L_γ and scaled q·L_γ values of Σ L·(L+K_S)".to_string(),
                });
            }
        }
        Ok(lattice)
    }

    /// Bigness of `q^n K_S + q^(n−1)(q−1) ΣD`, via the decomposition
    /// `q^(n−1)(q−1)·C̃ + q^(n−1)·margin·H + q^n·ΣE_i` with
    /// `margin = (q−1)·Σ_{F∖{0,e1}} (q·r_σ + m_σ) − 3q`.
    ///
    /// `C̃` and `ΣE_i` are effective and `H` is ample, so a positive margin
    /// makes `K_S̃` big.
    pub fn bigness_certificate(&self) -> Result<BignessCertificate, CoverError> {
        let g = self.group();
        let (qv, n) = (g.q() as i64, g.n());
        let q = self.q_scalar();
        let total = BigInt::from(self.construction().total_line_count());
        let margin = BigInt::from(qv - 1) * total - 3 * qv;

        let q_pow = |k: usize| (0..k).fold(T::one(), |acc, _| acc * q.clone());
        let nn = self.exceptional_count().clone();
        let lhs = DivisorClass::linear_combination([
            (q_pow(n), self.k_s()),
            (q_pow(n - 1) * (q.clone() - T::one()), &self.sum_divisors()?),
        ])?;
        let rhs = DivisorClass::linear_combination([
            (q_pow(n - 1) * (q.clone() - T::one()), self.c_tilde()),
            (
                q_pow(n - 1) * T::from_integer(&margin),
                &DivisorClass::hyperplane_multiple(T::one(), nn.clone()),
            ),
            (q_pow(n), &DivisorClass::exceptional_sum(nn)),
        ])?;

        let reduced = self.construction().f_set().reduced().len() as i64;
        Ok(BignessCertificate {
            pass: margin.is_positive() && lhs == rhs,
            margin,
            decomposition_holds: lhs == rhs,
            reduced_set_size: reduced as u64,
            counting_bound: BigInt::from((qv - 1) * reduced - 3 * qv),
            stated_bound: stated_bigness_bound(g.q(), n),
        })
    }
}

/// `q^n − (n+3)q + n − 1`, the lower bound on the margin obtained from
/// `|F̃| = (q^n−1)/(q−1) − n`. The true size is one smaller, see
/// [`BignessCertificate::counting_bound`].
pub fn stated_bigness_bound(q: u32, n: usize) -> BigInt {
    let qb = BigInt::from(q);
    num_traits::pow(qb.clone(), n) - BigInt::from(n + 3) * qb + BigInt::from(n) - 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BignessCertificate {
    pub margin: BigInt,
    pub pass: bool,
    pub decomposition_holds: bool,
    /// `|F̃| = |F| − (n + 2) = (q^n−1)/(q−1) − n − 1`.
    pub reduced_set_size: u64,
    /// `(q−1)|F̃| − 3q`: the margin with every `r_σ = 0`, a lower bound.
    pub counting_bound: BigInt,
    pub stated_bound: BigInt,
}

impl BuildingData<BigInt> {
    /// `Σ_γ L_γ·(L_γ + K_S)` at a concrete prime.
    pub fn sum_l_self_products(&self) -> Result<BigInt, CoverError> {
        let q = BigInt::from(self.group().q());
        let scaled = self.scaled_self_product_sum()?;
        let (quot, rem) = scaled.div_rem(&(&q * &q));
        if !rem.is_zero() {
            return Err(CoverError::OracleMismatch {
                what: "q² does not divide the scaled self-product sum".to_string(),
            });
        }
        Ok(quot)
    }

    /// Characters whose `L_γ·(L_γ + K_S)` is odd. Always empty for integral
    /// classes; a nonempty result means the classes are wrong.
    pub fn adjunction_parity_violations(&self) -> Vec<GroupElement> {
        let Some(bundles) = self.bundles() else {
            return self.group().elements().collect();
        };
        bundles
            .iter()
            .enumerate()
            .filter(|(_, l)| {
                let v = l
                    .intersect(&l.try_add(self.k_s()).expect("basis"))
                    .expect("basis");
                v.is_odd()
            })
            .map(|(gi, _)| self.group().element_at(gi))
            .collect()
    }

    /// `χ(O_S̃) = q^n + ½ Σ_γ L_γ·(L_γ + K_S)`.
    pub fn chi_tilde(&self) -> Result<BigInt, CoverError> {
        if let Some(gamma) = self.adjunction_parity_violations().into_iter().next() {
            return Err(CoverError::ParityViolation { gamma });
        }
        let sum = self.sum_l_self_products()?;
        let q_n = num_traits::pow(BigInt::from(self.group().q()), self.group().n());
        Ok(q_n + sum / 2)
    }

    pub fn ratio(&self) -> Result<BigRational, CoverError> {
        let chi = self.chi_tilde()?;
        if chi.is_zero() {
            return Err(CoverError::ZeroChi);
        }
        Ok(BigRational::new(self.k_tilde_squared()?, chi))
    }
}

impl BuildingData<IntPolynomial> {
    /// `Σ_γ L_γ·(L_γ + K_S)` as a polynomial in `p` with rational coefficients.
    pub fn sum_l_self_products(&self) -> Result<RatPolynomial, CoverError> {
        let q = BigInt::from(self.group().q());
        let scaled = self.scaled_self_product_sum()?;
        let q_sq = BigRational::from_integer(&q * &q);
        Ok(scaled.to_rational().map(|c| c / &q_sq))
    }

    pub fn chi_tilde(&self) -> Result<RatPolynomial, CoverError> {
        let q_n = num_traits::pow(BigInt::from(self.group().q()), self.group().n());
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let sum = self.sum_l_self_products()?;
        Ok(RatPolynomial::constant(BigRational::from_integer(q_n)) + sum.map(|c| c * &half))
    }

    /// `K̃² / χ` as a content-normalized rational function. Both sides are
    /// multiplied by `2q²` first so they stay integral.
    pub fn ratio(&self) -> Result<RationalFunction, CoverError> {
        let q = BigInt::from(self.group().q());
        let two_q_sq = IntPolynomial::constant(BigInt::from(2) * &q * &q);
        let q_n = num_traits::pow(q.clone(), self.group().n());
        let numerator = &self.k_tilde_squared()? * &two_q_sq;
        let denominator =
            &(&two_q_sq * &IntPolynomial::constant(q_n)) + &self.scaled_self_product_sum()?;
        if denominator.is_zero() {
            return Err(CoverError::ZeroChi);
        }
        Ok(RationalFunction::new(numerator, denominator)?)
    }

    /// The four asymptotic estimates, checked exactly:
    /// `K_S²` has degree at most 2, `K_S·ΣD = p³ + O(p²)`,
    /// `(ΣD)² = −p³ + O(p²)` and `Σ L·(L+K_S) = q^(n−2)(q²−1)/6 · p³ + O(p²)`.
    pub fn asymptotic_estimates(&self) -> Result<EstimateReport, CoverError> {
        let sum = self.sum_divisors()?;
        let report = EstimateReport {
            k_s_squared: self.k_s().square(),
            k_s_dot_sum: self.k_s().intersect(&sum)?,
            sum_squared: sum.square(),
            self_product_sum: self.sum_l_self_products()?,
            expected_self_product_leading: expected_self_product_leading(
                self.group().q(),
                self.group().n(),
            ),
        };
        report.check()?;
        Ok(report)
    }

    /// Compare against the numeric data at an admissible prime.
    pub fn specialize(&self, p: u64) -> Result<BuildingData<BigInt>, CoverError> {
        BuildingData::at_prime(self.construction().clone(), p)
    }
}

/// Exact polynomials behind the four asymptotic estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateReport {
    pub k_s_squared: IntPolynomial,
    pub k_s_dot_sum: IntPolynomial,
    pub sum_squared: IntPolynomial,
    pub self_product_sum: RatPolynomial,
    pub expected_self_product_leading: BigRational,
}

impl EstimateReport {
    fn check(&self) -> Result<(), CoverError> {
        let fail = |estimate: &'static str, detail: String| {
            Err(CoverError::EstimateFailed { estimate, detail })
        };
        if self.k_s_squared.degree().unwrap_or(0) > 2 {
            return fail("K_S^2 = O(p^2)", format!("K_S^2 = {}", self.k_s_squared));
        }
        let cubic_with = |poly: &IntPolynomial, lead: i64| {
            poly.degree() == Some(3) && poly.leading_coefficient() == Some(&BigInt::from(lead))
        };
        if !cubic_with(&self.k_s_dot_sum, 1) {
            return fail("K_S.sum D = p^3 + O(p^2)", format!("{}", self.k_s_dot_sum));
        }
        if !cubic_with(&self.sum_squared, -1) {
            return fail("(sum D)^2 = -p^3 + O(p^2)", format!("{}", self.sum_squared));
        }
        if self.self_product_sum.degree() != Some(3)
            || self.self_product_sum.leading_coefficient()
                != Some(&self.expected_self_product_leading)
        {
            return fail(
                "sum L.(L+K_S) leading coefficient",
                format!(
                    "got {}, expected leading {}",
                    self.self_product_sum, self.expected_self_product_leading
                ),
            );
        }
        Ok(())
    }
}

/// `lim_{p→∞} K̃²/χ` for the given choices.
pub fn limit_ratio(
    group: &Group,
    r: SectionCounts,
    f_override: Option<FSet>,
) -> Result<BigRational, CoverError> {
    let data = BuildingData::assemble_symbolic(group, r, f_override)?;
    match data.ratio()?.limit_at_infinity() {
        LimitAtInfinity::Finite(v) => Ok(v),
        other => Err(CoverError::OracleMismatch {
            what: format!("ratio has no finite nonzero limit: {other:?}"),
        }),
    }
}

/// Pass/fail outcome of each combinatorial certificate at a concrete prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Certificates {
    pub cover_condition: bool,
    pub independence: bool,
    pub adjunction_parity: bool,
    pub bigness: bool,
}

impl Certificates {
    pub fn all(&self) -> bool {
        self.cover_condition && self.independence && self.adjunction_parity && self.bigness
    }
}

/// Every invariant of the cover at one admissible prime.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantReport {
    pub q: u32,
    pub n: usize,
    pub p: u64,
    pub k_s_squared: BigInt,
    pub sum_divisors: DivisorClass<BigInt>,
    pub k_tilde_squared: BigInt,
    pub chi_tilde: BigInt,
    pub ratio: BigRational,
    pub bigness: BignessCertificate,
    pub certificates: Certificates,
    pub exceeds_nine: bool,
}

impl InvariantReport {
    pub fn compute(data: &BuildingData<BigInt>, p: u64) -> Result<Self, CoverError> {
        let g = data.group();
        let k_tilde_squared = data.k_tilde_squared()?;
        let chi_tilde = data.chi_tilde()?;
        if chi_tilde.is_zero() {
            return Err(CoverError::ZeroChi);
        }
        let ratio = BigRational::new(k_tilde_squared.clone(), chi_tilde.clone());
        let bigness = data.bigness_certificate()?;
        let certificates = Certificates {
            cover_condition: data.check_cover_condition().pass,
            independence: data.construction().f_set().independence_check().independent,
            adjunction_parity: data.adjunction_parity_violations().is_empty(),
            bigness: bigness.pass,
        };
        Ok(InvariantReport {
            q: g.q(),
            n: g.n(),
            p,
            k_s_squared: data.k_s().square(),
            sum_divisors: data.sum_divisors()?,
            exceeds_nine: ratio > BigRational::from_integer(BigInt::from(9)),
            k_tilde_squared,
            chi_tilde,
            ratio,
            bigness,
            certificates,
        })
    }
}

/// Symbolic invariants, valid at admissible `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicReport {
    pub q: u32,
    pub n: usize,
    pub k_tilde_squared: IntPolynomial,
    pub chi_tilde: RatPolynomial,
    pub ratio: RationalFunction,
    pub limit: LimitAtInfinity,
    pub estimates: EstimateReport,
}

impl SymbolicReport {
    pub fn compute(data: &BuildingData<IntPolynomial>) -> Result<Self, CoverError> {
        let ratio = data.ratio()?;
        Ok(SymbolicReport {
            q: data.group().q(),
            n: data.group().n(),
            k_tilde_squared: data.k_tilde_squared()?,
            chi_tilde: data.chi_tilde()?,
            limit: ratio.limit_at_infinity(),
            ratio,
            estimates: data.asymptotic_estimates()?,
        })
    }
}
