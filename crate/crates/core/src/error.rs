use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::axioms::AxiomViolation;
use crate::doperator::OperatorViolation;
use crate::set::PointSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Identifies which theorem-level property a check exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// Two regions meet in a set that contains a region or is singular.
    RegionIntersection,
    /// Every abundant set is abundant everywhere in some region.
    FundamentalTheorem,
    /// An abundant Baire set is comeager in some region.
    ComeagerRegion,
    /// The cluster-point operator satisfies the D-operator conditions.
    ClusterOperator,
    /// `τ(D)` is a topology.
    DTopology,
    /// Every non-empty D-open set is an abundant Baire set.
    OpenSetsAbundantBaire,
    /// Regions containing non-empty D-open sets force `M(C) = M(τ(D))` and
    /// `B(C) = Ba(τ(D))`.
    EquivalenceUnderHypothesis,
    /// The previous statement with the open-set lemma added as a hypothesis.
    EquivalenceUnderHypothesisAndLemma,
    /// Every region contains a minimal region.
    MorganCondition,
    /// Unions of minimal regions are open in the basic topology.
    MinimalUnionOpen,
    /// Morgan's condition yields equivalence with the basic topology.
    MorganEquivalence,
    /// Some topology on `X` shares the base's meager and Baire classes.
    EquivalentTopologyExists,
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TheoremId::RegionIntersection => "region_intersection",
            TheoremId::FundamentalTheorem => "fundamental_theorem",
            TheoremId::ComeagerRegion => "comeager_region",
            TheoremId::ClusterOperator => "cluster_operator",
            TheoremId::DTopology => "d_topology",
            TheoremId::OpenSetsAbundantBaire => "open_sets_abundant_baire",
            TheoremId::EquivalenceUnderHypothesis => "equivalence_under_hypothesis",
            TheoremId::EquivalenceUnderHypothesisAndLemma => {
                "equivalence_under_hypothesis_and_lemma"
            }
            TheoremId::MorganCondition => "morgan_condition",
            TheoremId::MinimalUnionOpen => "minimal_union_open",
            TheoremId::MorganEquivalence => "morgan_equivalence",
            TheoremId::EquivalentTopologyExists => "equivalent_topology_exists",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground-set size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("element {element} out of range for ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("{0} is not a region of the base")]
    NotARegion(PointSet),

    #[error("{0}")]
    InvalidInput(String),

    #[error("capacity exceeded: {what} {requested} exceeds limit {limit}")]
    Capacity {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    #[error("category base axioms violated ({} violation(s))", .0.len())]
    InvalidBase(Vec<AxiomViolation>),

    #[error("operator is not a D-operator ({} violation(s))", .0.len())]
    InvalidOperator(Vec<OperatorViolation>),

    #[error("theorem violation [{theorem}]: {detail}")]
    TheoremViolation { theorem: TheoremId, detail: String },
}

impl Error {
    pub(crate) fn theorem(theorem: TheoremId, detail: impl Into<String>) -> Self {
        Error::TheoremViolation {
            theorem,
            detail: detail.into(),
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
