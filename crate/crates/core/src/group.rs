//! The group `G = (Z/q)^n`, the lifted character pairing, F-sets and the
//! multiplicity solver that makes the cover condition solvable.
//!
//! Elements double as character indices: `γ` names the character with
//! `⟨χ_γ, e_i⟩ = γ_i`, so `⟨χ_γ, σ⟩ = γ·σ mod q`. The pairing is always
//! lifted to `{0, …, q−1}` and is *not* additive over the integers.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::primes::is_prime;

/// Largest `q^n` accepted; dense per-element tables are allocated.
pub const MAX_GROUP_ORDER: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("bad group parameters q = {q}, n = {n}: {reason}")]
    BadParameters { q: u64, n: u64, reason: String },
    #[error("group element does not belong to (Z/{q})^{n}")]
    ParameterMismatch { q: u32, n: usize },
    #[error("invalid F-set: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidFSet(Vec<FSetViolation>),
    #[error("multiplicity solver produced Σ m_σ σ = {residual}, expected zero")]
    SolverPostconditionFailed { residual: GroupElement },
}

/// `(Z/q)^n` with `q` an odd prime and `n ≥ 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Group {
    q: u32,
    n: usize,
    order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<u32>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Group {
    pub fn new(q: u64, n: u64) -> Result<Self, GroupError> {
        let bad = |reason: &str| GroupError::BadParameters {
            q,
            n,
            reason: reason.to_string(),
        };
        if q < 3 || !is_prime(q) {
            return Err(bad("q must be a prime >= 3"));
        }
        if n < 3 {
            return Err(bad("n must be >= 3"));
        }
        let order = u32::try_from(n)
            .ok()
            .and_then(|n| q.checked_pow(n))
            .filter(|&o| o <= MAX_GROUP_ORDER)
            .ok_or_else(|| bad(&format!("q^n exceeds {MAX_GROUP_ORDER}")))?;
        Ok(Group {
            q: q as u32,
            n: n as usize,
            order: order as usize,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `q^n`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn element(&self, coords: &[u32]) -> Result<GroupElement, GroupError> {
        if coords.len() != self.n || coords.iter().any(|&c| c >= self.q) {
            return Err(self.mismatch());
        }
        Ok(GroupElement {
            coords: coords.to_vec(),
        })
    }

    fn mismatch(&self) -> GroupError {
        GroupError::ParameterMismatch {
            q: self.q,
            n: self.n,
        }
    }

    fn check(&self, x: &GroupElement) -> Result<(), GroupError> {
        if x.coords.len() == self.n && x.coords.iter().all(|&c| c < self.q) {
            Ok(())
        } else {
            Err(self.mismatch())
        }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.n],
        }
    }

    /// Unit vector `e_i`, `i` counted from 1.
    pub fn unit(&self, i: usize) -> GroupElement {
        assert!((1..=self.n).contains(&i), "unit index out of range");
        let mut coords = vec![0; self.n];
        coords[i - 1] = 1;
        GroupElement { coords }
    }

    /// `{0, e_1 + e_2, e_1, …, e_n}`, the elements every F-set must contain.
    pub fn required_elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.zero(), self.add(&self.unit(1), &self.unit(2))];
        out.extend((1..=self.n).map(|i| self.unit(i)));
        out
    }

    /// Position in lexicographic order (first coordinate most significant).
    pub fn index_of(&self, x: &GroupElement) -> usize {
        x.coords
            .iter()
            .fold(0usize, |acc, &c| acc * self.q as usize + c as usize)
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let q = self.q as usize;
        let mut coords = vec![0u32; self.n];
        for slot in coords.iter_mut().rev() {
            *slot = (index % q) as u32;
            index /= q;
        }
        GroupElement { coords }
    }

    /// All `q^n` elements in lexicographic order, starting at zero.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(&x, &y)| (x + y) % self.q)
                .collect(),
        }
    }

    pub fn scale(&self, a: &GroupElement, k: u32) -> GroupElement {
        let q = self.q as u64;
        GroupElement {
            coords: a
                .coords
                .iter()
                .map(|&x| (x as u64 * k as u64 % q) as u32)
                .collect(),
        }
    }

    /// `⟨χ_γ, σ⟩`: the residue of `γ·σ` lifted to `{0, …, q−1}`.
    pub fn pairing(&self, gamma: &GroupElement, sigma: &GroupElement) -> Result<u32, GroupError> {
        self.check(gamma)?;
        self.check(sigma)?;
        Ok(self.pairing_unchecked(gamma, sigma))
    }

    pub(crate) fn pairing_unchecked(&self, gamma: &GroupElement, sigma: &GroupElement) -> u32 {
        let q = self.q as u64;
        let dot: u64 = gamma
            .coords
            .iter()
            .zip(&sigma.coords)
            .map(|(&g, &s)| g as u64 * s as u64)
            .sum();
        (dot % q) as u32
    }

    /// Representative of the class `{kσ : k = 1..q−1}` whose first nonzero
    /// coordinate is 1; `None` for zero.
    pub fn class_representative(&self, x: &GroupElement) -> Option<GroupElement> {
        let lead = *x.coords.iter().find(|&&c| c != 0)?;
        Some(self.scale(x, self.inverse(lead)))
    }

    fn inverse(&self, a: u32) -> u32 {
        let q = self.q as u64;
        let (mut base, mut exp, mut acc) = (a as u64 % q, q - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % q;
            }
            base = base * base % q;
            exp >>= 1;
        }
        acc as u32
    }

    /// Independence of nonzero elements: for prime `q`, two nonzero elements
    /// are independent iff neither is a multiple of the other. Zero entries
    /// are ignored. Returns every proportional pair.
    pub fn independence_check(&self, elems: &[GroupElement]) -> IndependenceReport {
        let mut violations = Vec::new();
        let nonzero: Vec<(&GroupElement, GroupElement)> = elems
            .iter()
            .filter_map(|x| self.class_representative(x).map(|r| (x, r)))
            .collect();
        for (i, (a, ra)) in nonzero.iter().enumerate() {
            for (b, rb) in &nonzero[i + 1..] {
                if ra == rb && a != b {
                    violations.push(((*a).clone(), (*b).clone()));
                }
            }
        }
        IndependenceReport {
            independent: violations.is_empty(),
            violations,
        }
    }

    /// The three residues that balance `A = Σ_{σ∈F̃} σ`:
    /// `m(e1+e2) ≡ −A_1 − 1`, `m(e2) ≡ −A_2 + A_1 + 1`, `m(e_i) ≡ −A_i` for `i ≥ 3`.
    /// Returned in the order `e1+e2, e2, e3, …, en`.
    pub fn balancing_multiplicities(&self, a: &GroupElement) -> Vec<(GroupElement, u32)> {
        let q = self.q as i64;
        let r = |v: i64| v.rem_euclid(q) as u32;
        let a1 = a.coords[0] as i64;
        let a2 = a.coords[1] as i64;
        let mut out = vec![
            (self.add(&self.unit(1), &self.unit(2)), r(-a1 - 1)),
            (self.unit(2), r(-a2 + a1 + 1)),
        ];
        for i in 3..=self.n {
            out.push((self.unit(i), r(-(a.coords[i - 1] as i64))));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub independent: bool,
    pub violations: Vec<(GroupElement, GroupElement)>,
}

/// One reason an element list fails to be an F-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FSetViolation {
    Malformed {
        line: usize,
        reason: String,
    },
    Duplicate(GroupElement),
    MissingRequired(GroupElement),
    /// Two distinct nonzero members in the same cyclic class (`F ∩ kF ≠ {0}`).
    Proportional(GroupElement, GroupElement),
    /// A cyclic class with no member in F (`⋃ kF ≠ G`).
    UncoveredClass(GroupElement),
    MissingZero,
}

impl fmt::Display for FSetViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FSetViolation::Malformed { line, reason } => write!(f, "line {line}: {reason}"),
            FSetViolation::Duplicate(x) => write!(f, "{x} listed more than once"),
            FSetViolation::MissingRequired(x) => write!(f, "required element {x} missing"),
            FSetViolation::Proportional(a, b) => {
                write!(f, "{a} and {b} are nonzero multiples of each other")
            }
            FSetViolation::UncoveredClass(x) => write!(f, "no multiple of {x} present"),
            FSetViolation::MissingZero => write!(f, "zero element missing"),
        }
    }
}

/// A subset `F ⊂ G` containing `{0, e1+e2, e1, …, en}` and exactly one
/// nonzero element from each cyclic class `{kσ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FSet {
    group: Group,
    /// Sorted lexicographically.
    elems: Vec<GroupElement>,
    members: Vec<bool>,
}

impl FSet {
    /// Lexicographic construction: seed with the required elements, then scan
    /// `G` in order and keep `σ` unless some `kσ` is already present. Each
    /// class therefore contributes its lex-smallest member unless a required
    /// element already represents it.
    pub fn canonical(group: &Group) -> FSet {
        let mut members = vec![false; group.order()];
        let mut covered = vec![false; group.order()];
        let mark = |x: &GroupElement, members: &mut [bool], covered: &mut [bool]| {
            members[group.index_of(x)] = true;
            for k in 1..group.q() {
                covered[group.index_of(&group.scale(x, k))] = true;
            }
        };
        for x in group.required_elements() {
            mark(&x, &mut members, &mut covered);
        }
        for x in group.elements() {
            if !covered[group.index_of(&x)] {
                mark(&x, &mut members, &mut covered);
            }
        }
        Self::from_membership(*group, members)
    }

    /// Random valid F-set: each class not represented by a required element
    /// gets a uniformly random nonzero multiple of its representative.
    pub fn random<R: Rng + ?Sized>(group: &Group, rng: &mut R) -> FSet {
        let mut members = vec![false; group.order()];
        let mut seen_class = vec![false; group.order()];
        for x in group.required_elements() {
            members[group.index_of(&x)] = true;
            if let Some(r) = group.class_representative(&x) {
                seen_class[group.index_of(&r)] = true;
            }
        }
        for x in group.elements() {
            let Some(rep) = group.class_representative(&x) else {
                continue;
            };
            if rep != x || seen_class[group.index_of(&rep)] {
                continue;
            }
            seen_class[group.index_of(&rep)] = true;
            let k = rng.gen_range(1..group.q());
            members[group.index_of(&group.scale(&rep, k))] = true;
        }
        Self::from_membership(*group, members)
    }

    fn from_membership(group: Group, members: Vec<bool>) -> FSet {
        let elems = members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| group.element_at(i))
            .collect();
        FSet {
            group,
            elems,
            members,
        }
    }

    /// Validates a candidate list against every F-set invariant and reports
    /// all violations at once.
    pub fn from_elements(group: &Group, elems: Vec<GroupElement>) -> Result<FSet, GroupError> {
        let mut violations = Vec::new();
        let mut members = vec![false; group.order()];
        for x in &elems {
            if group.check(x).is_err() {
                violations.push(FSetViolation::Malformed {
                    line: 0,
                    reason: format!("{x} is not an element of the group"),
                });
                continue;
            }
            let slot = &mut members[group.index_of(x)];
            if *slot {
                violations.push(FSetViolation::Duplicate(x.clone()));
            }
            *slot = true;
        }
        violations.extend(Self::structural_violations(group, &members));
        if violations.is_empty() {
            Ok(Self::from_membership(*group, members))
        } else {
            Err(GroupError::InvalidFSet(violations))
        }
    }

    fn structural_violations(group: &Group, members: &[bool]) -> Vec<FSetViolation> {
        let mut out = Vec::new();
        for x in group.required_elements() {
            if !members[group.index_of(&x)] {
                out.push(if x.is_zero() {
                    FSetViolation::MissingZero
                } else {
                    FSetViolation::MissingRequired(x)
                });
            }
        }
        // first member seen in each class, keyed by representative index
        let mut holder: Vec<Option<GroupElement>> = vec![None; group.order()];
        for (i, _) in members.iter().enumerate().filter(|(_, &m)| m) {
            let x = group.element_at(i);
            let Some(rep) = group.class_representative(&x) else {
                continue;
            };
            let slot = &mut holder[group.index_of(&rep)];
            match slot {
                Some(prev) => out.push(FSetViolation::Proportional(prev.clone(), x)),
                None => *slot = Some(x),
            }
        }
        for x in group.elements() {
            if group.class_representative(&x).as_ref() == Some(&x)
                && holder[group.index_of(&x)].is_none()
            {
                out.push(FSetViolation::UncoveredClass(x));
            }
        }
        out
    }

    /// Text format: one element per line as comma-separated residues. Blank
    /// lines and `#` comments are skipped.
    pub fn parse(group: &Group, text: &str) -> Result<FSet, GroupError> {
        let mut violations = Vec::new();
        let mut elems = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parsed: Result<Vec<u32>, _> = line.split(',').map(|t| t.trim().parse()).collect();
            let line = lineno + 1;
            match parsed {
                Err(e) => violations.push(FSetViolation::Malformed {
                    line,
                    reason: format!("not a list of residues: {e}"),
                }),
                Ok(coords) => match group.element(&coords) {
                    Ok(x) => elems.push(x),
                    Err(_) => violations.push(FSetViolation::Malformed {
                        line,
                        reason: format!(
                            "expected {} residues in 0..{}, got {:?}",
                            group.n(),
                            group.q(),
                            coords
                        ),
                    }),
                },
            }
        }
        match Self::from_elements(group, elems) {
            Ok(f) if violations.is_empty() => Ok(f),
            Ok(_) => Err(GroupError::InvalidFSet(violations)),
            Err(GroupError::InvalidFSet(more)) => {
                violations.extend(more);
                Err(GroupError::InvalidFSet(violations))
            }
            Err(e) => Err(e),
        }
    }

    /// One element per line, inverse of [`FSet::parse`].
    pub fn to_text(&self) -> String {
        self.elems
            .iter()
            .map(|x| {
                let parts: Vec<String> = x.coords.iter().map(u32::to_string).collect();
                parts.join(",") + "\n"
            })
            .collect()
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.group.check(x).is_ok() && self.members[self.group.index_of(x)]
    }

    /// `F̃ = F ∖ {0, e1+e2, e1, …, en}`.
    pub fn reduced(&self) -> Vec<GroupElement> {
        let required = self.group.required_elements();
        self.elems
            .iter()
            .filter(|x| !required.contains(x))
            .cloned()
            .collect()
    }

    /// `F ∖ {0, e1}`: the elements carrying general-line divisors.
    pub fn line_carriers(&self) -> Vec<GroupElement> {
        let (zero, e1) = (self.group.zero(), self.group.unit(1));
        self.elems
            .iter()
            .filter(|x| **x != zero && **x != e1)
            .cloned()
            .collect()
    }

    pub fn independence_check(&self) -> IndependenceReport {
        self.group.independence_check(&self.elems)
    }

    /// Counts, for every nonzero `σ`, the pairs `(f, k)` with
    /// `f ∈ F∖{0}`, `k ∈ 1..q−1`, `kf = σ`. The F-set partitions `G∖{0}` iff
    /// every count is exactly one; returns the offending elements.
    pub fn partition_defects(&self) -> Vec<GroupElement> {
        let g = &self.group;
        let mut hits = vec![0u32; g.order()];
        for f in self.elems.iter().filter(|x| !x.is_zero()) {
            for k in 1..g.q() {
                hits[g.index_of(&g.scale(f, k))] += 1;
            }
        }
        (1..g.order())
            .filter(|&i| hits[i] != 1)
            .map(|i| g.element_at(i))
            .collect()
    }
}

/// Nonnegative multiplicities `m_σ ∈ {0, …, q−1}` indexed by group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityMap {
    group: Group,
    values: Vec<u32>,
}

/// The three conditions a multiplicity map must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiplicityConditions {
    /// `m(e1) = 1`.
    pub unit_at_e1: bool,
    /// `m(σ) = 0` for `σ ∉ F`.
    pub supported_on_f: bool,
    /// `Σ m_σ σ = 0` in `G`.
    pub zero_sum: bool,
}

impl MultiplicityConditions {
    pub fn all(&self) -> bool {
        self.unit_at_e1 && self.supported_on_f && self.zero_sum
    }
}

impl MultiplicityMap {
    pub fn zeros(group: &Group) -> Self {
        MultiplicityMap {
            group: *group,
            values: vec![0; group.order()],
        }
    }

    pub fn get(&self, x: &GroupElement) -> u32 {
        self.values[self.group.index_of(x)]
    }

    /// Sets `m(x)`, reducing mod `q`.
    pub fn set(&mut self, x: &GroupElement, value: u32) {
        let idx = self.group.index_of(x);
        self.values[idx] = value % self.group.q();
    }

    /// `Σ m_σ σ` in `G`.
    pub fn weighted_sum(&self) -> GroupElement {
        let g = &self.group;
        let q = g.q() as u64;
        let mut acc = vec![0u64; g.n()];
        for (i, &m) in self.values.iter().enumerate().filter(|(_, &m)| m != 0) {
            for (slot, c) in acc.iter_mut().zip(g.element_at(i).coords) {
                *slot = (*slot + m as u64 * c as u64) % q;
            }
        }
        GroupElement {
            coords: acc.into_iter().map(|c| c as u32).collect(),
        }
    }

    pub fn conditions(&self, f: &FSet) -> MultiplicityConditions {
        let g = &self.group;
        MultiplicityConditions {
            unit_at_e1: self.get(&g.unit(1)) == 1,
            supported_on_f: self
                .values
                .iter()
                .enumerate()
                .all(|(i, &m)| m == 0 || f.contains(&g.element_at(i))),
            zero_sum: self.weighted_sum().is_zero(),
        }
    }

    /// Solves for multiplicities with `m(e1) = 1`, support in `F` and
    /// `Σ m_σ σ = 0`: ones on `F̃`, zero at the origin, and the residues from
    /// [`Group::balancing_multiplicities`] on `e1+e2, e2, …, en`.
    pub fn solve(f: &FSet) -> Result<Self, GroupError> {
        let g = f.group();
        let mut m = Self::zeros(g);
        let reduced = f.reduced();
        let mut a = g.zero();
        for x in &reduced {
            m.set(x, 1);
            a = g.add(&a, x);
        }
        m.set(&g.unit(1), 1);
        for (x, value) in g.balancing_multiplicities(&a) {
            m.set(&x, value);
        }
        let residual = m.weighted_sum();
        if !residual.is_zero() {
            return Err(GroupError::SolverPostconditionFailed { residual });
        }
        Ok(m)
    }
}
