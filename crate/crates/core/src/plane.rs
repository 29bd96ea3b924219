//! Points and lines of the projective plane over a prime field `F_p`.
//!
//! Points and lines are triples of residues normalized so the first nonzero
//! entry is 1. A point `x` lies on a line `a` iff `a·x ≡ 0 (mod p)`.

use rayon::prelude::*;
use thiserror::Error;

use crate::primes::is_prime;

/// Largest `p` for which [`incidence_stats`] scans all point/line pairs.
pub const DEFAULT_VERIFY_CAP: u64 = 101;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("exhaustive incidence check for p = {p} exceeds the cap {cap}")]
    AboveVerificationCap { p: u64, cap: u64 },
    #[error("incidence counts are not uniform for p = {p}")]
    NonUniformIncidence { p: u64 },
}

fn normalize(p: u64, mut v: [u64; 3]) -> Option<[u64; 3]> {
    for x in &mut v {
        *x %= p;
    }
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = mod_inverse(lead, p);
    Some(v.map(|x| (x as u128 * inv as u128 % p as u128) as u64))
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) is the inverse
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn cross(p: u64, a: [u64; 3], b: [u64; 3]) -> [u64; 3] {
    let m = |x: u64, y: u64| (x as u128 * y as u128 % p as u128) as u64;
    let sub = |x: u64, y: u64| (x + p - y) % p;
    [
        sub(m(a[1], b[2]), m(a[2], b[1])),
        sub(m(a[2], b[0]), m(a[0], b[2])),
        sub(m(a[0], b[1]), m(a[1], b[0])),
    ]
}

fn normalized_triples(p: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::with_capacity((p * p + p + 1) as usize);
    for a in 0..p {
        for b in 0..p {
            out.push([1, a, b]);
        }
    }
    for b in 0..p {
        out.push([0, 1, b]);
    }
    out.push([0, 0, 1]);
    out.sort_unstable();
    out
}

fn require_prime(p: u64) -> Result<(), PlaneError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(PlaneError::NotPrime(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [u64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine {
    coeffs: [u64; 3],
}

impl ProjPoint {
    /// `None` for the zero vector.
    pub fn new(p: u64, coords: [u64; 3]) -> Option<Self> {
        normalize(p, coords).map(|coords| ProjPoint { coords })
    }

    pub fn coords(&self) -> [u64; 3] {
        self.coords
    }

    /// The unique line through two distinct points.
    pub fn join(&self, other: &ProjPoint, p: u64) -> Option<ProjLine> {
        ProjLine::new(p, cross(p, self.coords, other.coords))
    }
}

impl ProjLine {
    pub fn new(p: u64, coeffs: [u64; 3]) -> Option<Self> {
        normalize(p, coeffs).map(|coeffs| ProjLine { coeffs })
    }

    pub fn coeffs(&self) -> [u64; 3] {
        self.coeffs
    }

    pub fn contains(&self, point: &ProjPoint, p: u64) -> bool {
        let dot = self
            .coeffs
            .iter()
            .zip(point.coords)
            .map(|(&a, x)| a as u128 * x as u128)
            .sum::<u128>();
        dot % p as u128 == 0
    }

    /// Intersection point of two distinct lines; always `F_p`-rational.
    pub fn meet(&self, other: &ProjLine, p: u64) -> Option<ProjPoint> {
        ProjPoint::new(p, cross(p, self.coeffs, other.coeffs))
    }
}

/// All `p^2 + p + 1` points, sorted.
pub fn enumerate_points(p: u64) -> Result<Vec<ProjPoint>, PlaneError> {
    require_prime(p)?;
    Ok(normalized_triples(p)
        .into_iter()
        .map(|coords| ProjPoint { coords })
        .collect())
}

/// All `p^2 + p + 1` lines in dual coordinates, sorted.
pub fn enumerate_lines(p: u64) -> Result<Vec<ProjLine>, PlaneError> {
    require_prime(p)?;
    Ok(normalized_triples(p)
        .into_iter()
        .map(|coeffs| ProjLine { coeffs })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IncidenceStats {
    pub points: u64,
    pub lines: u64,
    pub points_per_line: u64,
    pub lines_per_point: u64,
}

impl IncidenceStats {
    /// Counts from `p^2 + p + 1` and `p + 1`, no enumeration.
    pub fn closed_form(p: u64) -> Result<Self, PlaneError> {
        require_prime(p)?;
        let total = p * p + p + 1;
        Ok(IncidenceStats {
            points: total,
            lines: total,
            points_per_line: p + 1,
            lines_per_point: p + 1,
        })
    }
}

/// Exhaustive incidence scan with [`DEFAULT_VERIFY_CAP`].
pub fn incidence_stats(p: u64) -> Result<IncidenceStats, PlaneError> {
    incidence_stats_with_cap(p, DEFAULT_VERIFY_CAP)
}

/// Counts every incidence `⟨point, line⟩ ≡ 0` directly and checks the counts
/// are the same for every line and for every point.
pub fn incidence_stats_with_cap(p: u64, cap: u64) -> Result<IncidenceStats, PlaneError> {
    require_prime(p)?;
    if p > cap {
        return Err(PlaneError::AboveVerificationCap { p, cap });
    }
    let points = enumerate_points(p)?;
    let lines = enumerate_lines(p)?;

    let per_line: Vec<u64> = lines
        .par_iter()
        .map(|l| points.iter().filter(|x| l.contains(x, p)).count() as u64)
        .collect();
    let per_point: Vec<u64> = points
        .par_iter()
        .map(|x| lines.iter().filter(|l| l.contains(x, p)).count() as u64)
        .collect();

    let uniform = |counts: &[u64]| -> Option<u64> {
        let first = *counts.first()?;
        counts.iter().all(|&c| c == first).then_some(first)
    };
    let (Some(points_per_line), Some(lines_per_point)) = (uniform(&per_line), uniform(&per_point))
    else {
        return Err(PlaneError::NonUniformIncidence { p });
    };
    Ok(IncidenceStats {
        points: points.len() as u64,
        lines: lines.len() as u64,
        points_per_line,
        lines_per_point,
    })
}
