use std::collections::BTreeMap;

use rayon::prelude::*;

use super::CoverError;
use crate::group::{FSet, Group, GroupElement, MultiplicityMap};

/// Section counts `r_σ ≥ 0`: a default plus per-element overrides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionCounts {
    default: u32,
    overrides: BTreeMap<GroupElement, u32>,
}

impl Default for SectionCounts {
    fn default() -> Self {
        Self::uniform(1)
    }
}

impl SectionCounts {
    pub fn uniform(r: u32) -> Self {
        SectionCounts {
            default: r,
            overrides: BTreeMap::new(),
        }
    }

    pub fn with(mut self, sigma: GroupElement, r: u32) -> Self {
        self.overrides.insert(sigma, r);
        self
    }

    pub fn set(&mut self, sigma: GroupElement, r: u32) {
        self.overrides.insert(sigma, r);
    }

    pub fn get(&self, sigma: &GroupElement) -> u32 {
        self.overrides.get(sigma).copied().unwrap_or(self.default)
    }

    pub fn default_count(&self) -> u32 {
        self.default
    }

    pub fn overrides(&self) -> impl Iterator<Item = (&GroupElement, u32)> {
        self.overrides.iter().map(|(k, &v)| (k, v))
    }
}

/// The `p`-independent half of the building data: the F-set, the
/// multiplicities, the section counts and, for every character `γ`, the
/// pairing weights against each distinct branch divisor.
///
/// Branch divisors are `D(e1) = C̃` and `D(σ) = (q·r_σ + m_σ)·H` for
/// `σ ∈ F∖{0, e1}`; every other `D(σ)` is zero. Carriers with the same line
/// count share one class, so the weight vector of `γ` has one slot for `C̃`
/// followed by one slot per distinct line count.
#[derive(Debug, Clone)]
pub struct Construction {
    group: Group,
    f: FSet,
    m: MultiplicityMap,
    r: SectionCounts,
    carriers: Vec<(GroupElement, u64)>,
    line_counts: Vec<u64>,
    weights: Vec<Vec<i64>>,
    f_values: Vec<i128>,
}

impl Construction {
    /// F defaults to the lexicographic F-set; `m` comes from the solver.
    pub fn new(
        group: &Group,
        r: SectionCounts,
        f_override: Option<FSet>,
    ) -> Result<Self, CoverError> {
        let f = match f_override {
            Some(f) if f.group() == group => f,
            Some(_) => {
                return Err(CoverError::BadFSet(
                    "F-set belongs to a different group".to_string(),
                ))
            }
            None => FSet::canonical(group),
        };
        let m = MultiplicityMap::solve(&f)?;
        Ok(Self::from_parts(f, m, r))
    }

    /// No checks on `m`; used to build deliberately broken data.
    pub fn from_parts(f: FSet, m: MultiplicityMap, r: SectionCounts) -> Self {
        let group = *f.group();
        let q = group.q() as u64;
        let carriers: Vec<(GroupElement, u64)> = f
            .line_carriers()
            .into_iter()
            .map(|s| {
                let k = q * r.get(&s) as u64 + m.get(&s) as u64;
                (s, k)
            })
            .collect();

        let mut line_counts: Vec<u64> = carriers
            .iter()
            .map(|&(_, k)| k)
            .filter(|&k| k > 0)
            .collect();
        line_counts.sort_unstable();
        line_counts.dedup();
        let slot_of = |k: u64| 1 + line_counts.binary_search(&k).expect("listed");

        let e1 = group.unit(1);
        let weights: Vec<Vec<i64>> = (0..group.order())
            .into_par_iter()
            .map(|gi| {
                let gamma = group.element_at(gi);
                let mut w = vec![0i64; 1 + line_counts.len()];
                w[0] = group.pairing_unchecked(&gamma, &e1) as i64;
                for (s, k) in &carriers {
                    if *k > 0 {
                        w[slot_of(*k)] += group.pairing_unchecked(&gamma, s) as i64;
                    }
                }
                w
            })
            .collect();

        let f_values: Vec<i128> = (0..group.order())
            .into_par_iter()
            .map(|gi| {
                let gamma = group.element_at(gi);
                carriers
                    .iter()
                    .map(|(s, k)| group.pairing_unchecked(&gamma, s) as i128 * *k as i128)
                    .sum()
            })
            .collect();

        Construction {
            group,
            f,
            m,
            r,
            carriers,
            line_counts,
            weights,
            f_values,
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn f_set(&self) -> &FSet {
        &self.f
    }

    pub fn multiplicities(&self) -> &MultiplicityMap {
        &self.m
    }

    pub fn section_counts(&self) -> &SectionCounts {
        &self.r
    }

    /// `(σ, q·r_σ + m_σ)` for `σ ∈ F∖{0, e1}`, lexicographic.
    pub fn carriers(&self) -> &[(GroupElement, u64)] {
        &self.carriers
    }

    /// `q·r_σ + m_σ` for a carrier, `None` otherwise.
    pub fn line_count(&self, sigma: &GroupElement) -> Option<u64> {
        self.carriers
            .binary_search_by(|(s, _)| s.cmp(sigma))
            .ok()
            .map(|i| self.carriers[i].1)
    }

    /// Distinct nonzero line counts, ascending.
    pub(crate) fn distinct_line_counts(&self) -> &[u64] {
        &self.line_counts
    }

    /// Pairing weights of character index `gi` (see the type docs).
    pub(crate) fn weights(&self, gi: usize) -> &[i64] {
        &self.weights[gi]
    }

    /// `Σ_{σ∈F∖{0,e1}} (q·r_σ + m_σ)`.
    pub fn total_line_count(&self) -> u128 {
        self.carriers.iter().map(|&(_, k)| k as u128).sum()
    }

    /// `f(γ) = Σ_{σ∈F∖{0,e1}} ⟨χ_γ, σ⟩ (q·r_σ + m_σ)`, constant in `p`.
    pub fn f_value(&self, gamma: &GroupElement) -> i128 {
        self.f_values[self.group.index_of(gamma)]
    }

    pub(crate) fn f_value_at(&self, gi: usize) -> i128 {
        self.f_values[gi]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_value_examples() {
        let g = Group::new(3, 3).unwrap();
        let c = Construction::new(&g, SectionCounts::default(), None).unwrap();
        assert_eq!(c.f_value(&g.zero()), 0);

        // direct summation over the twelve carriers for γ = e1
        let e1 = g.unit(1);
        assert_eq!(c.carriers().len(), 12);
        let expected: i128 = c
            .carriers()
            .iter()
            .map(|(s, _)| {
                let pair = (s.coords()[0] % 3) as i128;
                pair * (3 + c.multiplicities().get(s) as i128)
            })
            .sum();
        assert_eq!(c.f_value(&e1), expected);
    }

    #[test]
    fn single_carrier_f_value() {
        // F∖{0,e1} restricted by hand to {e2} with r = 1, m = 2
        let g = Group::new(3, 3).unwrap();
        let f = FSet::canonical(&g);
        let mut m = MultiplicityMap::zeros(&g);
        m.set(&g.unit(2), 2);
        let mut r = SectionCounts::uniform(0);
        r.set(g.unit(2), 1);
        let c = Construction::from_parts(f, m, r);
        assert_eq!(c.f_value(&g.unit(2)), 5);
        assert_eq!(c.line_count(&g.unit(2)), Some(5));
        assert_eq!(c.total_line_count(), 5);
    }

    #[test]
    fn foreign_override_rejected() {
        let g = Group::new(3, 3).unwrap();
        let other = FSet::canonical(&Group::new(5, 3).unwrap());
        assert!(matches!(
            Construction::new(&g, SectionCounts::default(), Some(other)),
            Err(CoverError::BadFSet(_))
        ));
    }
}
