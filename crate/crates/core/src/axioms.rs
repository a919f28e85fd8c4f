//! Validation of the two category-base axioms.
//!
//! Axiom 1: the regions cover `X`.
//!
//! Axiom 2: for every region `A` and every non-empty family `D` of pairwise
//! disjoint regions with `|D| < |C|`,
//!
//! * if `A ∩ ∪D` contains a region, some `D₁ ∈ D` has `A ∩ D₁` containing a
//!   region;
//! * otherwise some region `B ⊆ A` is disjoint from every member of `D`.
//!
//! For a single-region family the size bound admits no `D`, so axiom 2 holds
//! vacuously.

use serde::Serialize;

use crate::base::CategoryBase;
use crate::error::{Error, Result};
use crate::set::{check_n, PointSet, SetFamily};

/// Default cap on the number of disjoint subfamilies examined per base.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ViolationKind {
    Axiom1,
    Axiom2i,
    Axiom2ii,
    EmptyRegion,
    DuplicateRegion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub kind: ViolationKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_region: Option<PointSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_family: Option<SetFamily>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_point: Option<usize>,
}

impl AxiomViolation {
    fn point(x: usize) -> Self {
        Self {
            kind: ViolationKind::Axiom1,
            witness_region: None,
            witness_family: None,
            witness_point: Some(x),
        }
    }

    fn region(kind: ViolationKind, a: PointSet) -> Self {
        Self {
            kind,
            witness_region: Some(a),
            witness_family: None,
            witness_point: None,
        }
    }
}

/// Checks both axioms and returns the validated base, or every violation
/// found. `budget` bounds the number of disjoint subfamilies enumerated.
pub fn validate_base(n: usize, regions: &[PointSet], budget: u64) -> Result<CategoryBase> {
    check_n(n)?;
    if n == 0 {
        return Err(Error::InvalidInput("ground set must be non-empty".into()));
    }
    let mut violations = Vec::new();
    let mut masks: Vec<u32> = Vec::with_capacity(regions.len());
    for &r in regions {
        r.ensure_n(n)?;
        if r.is_empty() {
            if !violations
                .iter()
                .any(|v: &AxiomViolation| v.kind == ViolationKind::EmptyRegion)
            {
                violations.push(AxiomViolation::region(ViolationKind::EmptyRegion, r));
            }
        } else if masks.contains(&r.bits()) {
            violations.push(AxiomViolation::region(ViolationKind::DuplicateRegion, r));
        } else {
            masks.push(r.bits());
        }
    }
    let family = SetFamily::from_masks(n, masks);

    let covered = family.union();
    for x in covered.complement().elements() {
        violations.push(AxiomViolation::point(x));
    }
    if !family.is_empty() {
        violations.extend(axiom2_violations(&family, budget)?);
    }

    if violations.is_empty() {
        Ok(CategoryBase::assemble(n, family))
    } else {
        Err(Error::InvalidBase(violations))
    }
}

fn axiom2_violations(family: &SetFamily, budget: u64) -> Result<Vec<AxiomViolation>> {
    let masks = family.masks();
    let contains_region = |s: u32| masks.iter().any(|&r| r & !s == 0);
    // (region index, family ordinal, violation)
    let mut found: Vec<(usize, u64, AxiomViolation)> = Vec::new();

    let mut walk = DisjointWalk::new(masks, masks.len().saturating_sub(1));
    let mut ordinal = 0u64;
    while walk.advance().is_some() {
        ordinal += 1;
        if ordinal > budget {
            return Err(Error::Capacity {
                what: "disjoint subfamilies",
                requested: ordinal,
                limit: budget,
            });
        }
        let union = walk.union();
        let chosen = &walk.chosen;
        for (ai, &a) in masks.iter().enumerate() {
            let kind = if contains_region(a & union) {
                if chosen.iter().any(|&d| contains_region(a & masks[d])) {
                    continue;
                }
                ViolationKind::Axiom2i
            } else {
                if masks.iter().any(|&b| b & !a == 0 && b & union == 0) {
                    continue;
                }
                ViolationKind::Axiom2ii
            };
            let d = SetFamily::from_masks(family.n(), chosen.iter().map(|&i| masks[i]).collect());
            found.push((
                ai,
                ordinal,
                AxiomViolation {
                    kind,
                    witness_region: Some(PointSet::raw(family.n(), a)),
                    witness_family: Some(d),
                    witness_point: None,
                },
            ));
        }
    }
    found.sort_by_key(|&(ai, ord, _)| (ai, ord));
    Ok(found.into_iter().map(|(_, _, v)| v).collect())
}

/// Depth-first walk over families of pairwise-disjoint members, extending
/// only with higher-indexed members that miss the current union.
struct DisjointWalk<'a> {
    masks: &'a [u32],
    max_size: usize,
    chosen: Vec<usize>,
    /// `unions[k]` is the union of the first `k` chosen members.
    unions: Vec<u32>,
    started: bool,
}

impl<'a> DisjointWalk<'a> {
    fn new(masks: &'a [u32], max_size: usize) -> Self {
        Self {
            masks,
            max_size,
            chosen: Vec::new(),
            unions: vec![0],
            started: false,
        }
    }

    fn union(&self) -> u32 {
        *self.unions.last().unwrap()
    }

    fn first_fit(&self, from: usize, union: u32) -> Option<usize> {
        (from..self.masks.len()).find(|&j| self.masks[j] & union == 0)
    }

    fn push(&mut self, j: usize) {
        let u = self.union() | self.masks[j];
        self.chosen.push(j);
        self.unions.push(u);
    }

    fn advance(&mut self) -> Option<&[usize]> {
        if self.max_size == 0 {
            return None;
        }
        if !self.started {
            self.started = true;
            let j = self.first_fit(0, 0)?;
            self.push(j);
            return Some(&self.chosen);
        }
        if self.chosen.len() < self.max_size {
            let from = self.chosen.last().map_or(0, |&k| k + 1);
            if let Some(j) = self.first_fit(from, self.union()) {
                self.push(j);
                return Some(&self.chosen);
            }
        }
        while let Some(k) = self.chosen.pop() {
            self.unions.pop();
            if let Some(j) = self.first_fit(k + 1, self.union()) {
                self.push(j);
                return Some(&self.chosen);
            }
        }
        None
    }
}

/// Every non-empty family of pairwise-disjoint members of `regions` with at
/// most `max_size` members, in depth-first order.
pub fn disjoint_subfamilies(
    regions: &SetFamily,
    max_size: usize,
) -> impl Iterator<Item = SetFamily> + '_ {
    let n = regions.n();
    let masks = regions.masks();
    let mut walk = DisjointWalk::new(masks, max_size);
    std::iter::from_fn(move || {
        walk.advance()
            .map(|chosen| SetFamily::from_masks(n, chosen.iter().map(|&i| masks[i]).collect()))
    })
}
