//! A finite-model workbench for category bases.
//!
//! A category base `(X, C)` is a ground set with a family of "regions"
//! satisfying two axioms; it supports notions of singular, meager and Baire
//! sets that generalize first-category sets and sets with the Baire property
//! of a topology. This crate represents everything over a finite ground set
//! `X = {0, .., n-1}` as bitmasks and provides:
//!
//! * [`axioms`]: axiom checking with witnesses,
//! * [`classify`]: singular / meager / Baire classification,
//! * [`doperator`]: D-operators, the cluster-point operator and `τ(D)`,
//! * [`topo`]: nowhere-dense, first-category and Baire-property classes,
//! * [`equiv`]: comparison of a base with a topology,
//! * [`search`]: exhaustive and seeded random sweeps over small bases.

pub mod axioms;
pub mod base;
pub mod classify;
pub mod doperator;
pub mod equiv;
pub mod error;
pub mod fixtures;
pub mod search;
pub mod set;
pub mod topo;

pub use axioms::{validate_base, AxiomViolation, ViolationKind, DEFAULT_BUDGET};
pub use base::CategoryBase;
pub use classify::SetClass;
pub use doperator::{OperatorTable, OperatorViolation};
pub use equiv::EquivalenceReport;
pub use error::{Error, Result, TheoremId};
pub use set::{power_set_iter, PointSet, SetFamily, MAX_N};
pub use topo::{BaireDecomposition, Topology, TopologyViolation};
