use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::building::BuildingData;
use super::construction::{Construction, SectionCounts};
use super::invariants::InvariantReport;
use super::CoverError;
use crate::group::{FSet, Group};
use crate::primes::primes_minus_one_mod;

/// One admissible prime of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchRow {
    pub p: u64,
    pub k_tilde_squared: BigInt,
    pub chi_tilde: BigInt,
    pub ratio: BigRational,
    pub exceeds_nine: bool,
    pub bigness_margin: BigInt,
    pub certificates_pass: bool,
}

impl From<InvariantReport> for SearchRow {
    fn from(r: InvariantReport) -> Self {
        SearchRow {
            p: r.p,
            certificates_pass: r.certificates.all(),
            k_tilde_squared: r.k_tilde_squared,
            chi_tilde: r.chi_tilde,
            ratio: r.ratio,
            exceeds_nine: r.exceeds_nine,
            bigness_margin: r.bigness.margin,
        }
    }
}

/// Exact invariants at every prime `p ≡ −1 (mod q)` in `[p_min, p_max]`,
/// sorted by `p`. Primes are evaluated in parallel; the row order does not
/// depend on scheduling.
pub fn search_counterexamples(
    group: &Group,
    p_min: u64,
    p_max: u64,
    r: SectionCounts,
    f_override: Option<FSet>,
) -> Result<Vec<SearchRow>, CoverError> {
    if p_min > p_max {
        return Err(CoverError::EmptyRange { p_min, p_max });
    }
    let construction = Arc::new(Construction::new(group, r, f_override)?);
    let primes: Vec<u64> = primes_minus_one_mod(group.q() as u64, p_min, p_max)
        .into_iter()
        .filter(|&p| p != group.q() as u64)
        .collect();
    primes
        .par_iter()
        .map(|&p| {
            let data = BuildingData::at_prime(construction.clone(), p)?;
            InvariantReport::compute(&data, p).map(SearchRow::from)
        })
        .collect()
}

/// Smallest `p` in the table whose ratio exceeds 9.
pub fn first_exceeding_nine(rows: &[SearchRow]) -> Option<u64> {
    rows.iter().find(|r| r.exceeds_nine).map(|r| r.p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn congruence_filter_and_order() {
        let g = Group::new(3, 3).unwrap();
        let rows = search_counterexamples(&g, 2, 200, SectionCounts::default(), None).unwrap();
        assert!(rows.iter().all(|r| r.p % 3 == 2));
        assert!(rows.windows(2).all(|w| w[0].p < w[1].p));
        assert_eq!(rows[0].p, 2);
        assert!(rows.iter().all(|r| r.certificates_pass));
    }

    #[test]
    fn empty_range() {
        let g = Group::new(3, 3).unwrap();
        assert!(matches!(
            search_counterexamples(&g, 10, 5, SectionCounts::default(), None),
            Err(CoverError::EmptyRange { .. })
        ));
        let rows = search_counterexamples(&g, 24, 28, SectionCounts::default(), None).unwrap();
        assert!(rows.is_empty());
    }
}
