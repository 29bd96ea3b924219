//! Building data of the abelian cover and its numerical invariants.

mod building;
mod construction;
mod invariants;
mod search;

pub use building::{check_admissible, BuildingData, CoverCheck};
pub use construction::{Construction, SectionCounts};
pub use invariants::{
    expected_chi_leading, expected_k_tilde_leading, expected_self_product_leading, limit_ratio,
    stated_bigness_bound, BignessCertificate, Certificates, EstimateReport, InvariantReport,
    SymbolicReport,
};
pub use search::{first_exceeding_nine, search_counterexamples, SearchRow};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::group::{GroupElement, GroupError};
use crate::picard::PicardError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("p = {p} is not admissible for q = {q}: {reason}")]
    InadmissibleP { p: u64, q: u32, reason: String },
    #[error("bad F-set: {0}")]
    BadFSet(String),
    #[error("cover condition fails for {} characters", .violations.len())]
    CoverConditionViolated { violations: Vec<GroupElement> },
    #[error("independent computations disagree: {what}")]
    OracleMismatch { what: String },
    #[error("L·(L+K_S) is odd for character {gamma}")]
    ParityViolation { gamma: GroupElement },
    #[error("χ(O) vanishes")]
    ZeroChi,
    #[error("estimate {estimate} fails: {detail}")]
    EstimateFailed {
        estimate: &'static str,
        detail: String,
    },
    #[error("empty prime range [{p_min}, {p_max}]")]
    EmptyRange { p_min: u64, p_max: u64 },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Picard(#[from] PicardError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
