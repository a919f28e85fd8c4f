//! Comparing a category base with a topology: the "every region contains a
//! non-empty D-open set" hypothesis, the open-set lemma, the meager/Baire
//! class comparison, and Morgan's minimal-region condition.

use serde::Serialize;

use crate::base::CategoryBase;
use crate::classify::{classify_all, SetClass};
use crate::doperator::{basic_topology, d_topology, validate_operator, OperatorTable};
use crate::error::{Error, Result};
use crate::set::{full_mask, PointSet, SetFamily};
use crate::topo::Topology;

/// Default number of witnesses kept per mismatch direction.
pub const DEFAULT_WITNESS_CAP: usize = 8;

/// Largest number of minimal regions whose unions are enumerated.
pub const MAX_MINIMAL_REGIONS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// In `M(C)` but not in `M(τ)`.
    MeagerOnlyInBase,
    /// In `M(τ)` but not in `M(C)`.
    MeagerOnlyInTopology,
    /// In `B(C)` but not in `Ba(τ)`.
    BaireOnlyInBase,
    /// In `Ba(τ)` but not in `B(C)`.
    BaireOnlyInTopology,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub direction: Direction,
    pub set: PointSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub meager_equal: bool,
    pub baire_equal: bool,
    pub hypothesis_holds: bool,
    pub morgan_holds: bool,
    /// Every non-empty open set is abundant and Baire in the base.
    pub open_sets_abundant_baire: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub open_set_witness: Option<PointSet>,
    /// The base has a single region.
    pub degenerate_base: bool,
    pub topology: Topology,
    /// Mismatching sets, ascending within each direction, capped per
    /// direction.
    pub mismatches: Vec<Mismatch>,
    /// Total mismatches per direction before capping, in `Direction` order.
    pub mismatch_counts: [usize; 4],
}

impl EquivalenceReport {
    pub fn equivalent(&self) -> bool {
        self.meager_equal && self.baire_equal
    }

    /// The hypothesis holds but the classes differ.
    pub fn contradicts_theorem(&self) -> bool {
        self.hypothesis_holds && !self.equivalent()
    }

    pub fn witnesses(&self, direction: Direction) -> impl Iterator<Item = PointSet> + '_ {
        self.mismatches
            .iter()
            .filter(move |m| m.direction == direction)
            .map(|m| m.set)
    }
}

/// Every region contains a non-empty open set of `t`.
pub fn hypothesis_holds(base: &CategoryBase, t: &Topology) -> bool {
    debug_assert_eq!(base.n(), t.n());
    base.region_masks().iter().all(|&a| {
        t.opens()
            .masks()
            .iter()
            .any(|&u| u != 0 && u & !a == 0)
    })
}

/// Checks that every non-empty open set of `t` is abundant and Baire in
/// `base`; the first failing open set is returned as the witness.
pub fn open_set_lemma_check(base: &CategoryBase, t: &Topology) -> Result<(), PointSet> {
    let class = classify_all(base).expect("base size is within the library cap");
    open_sets_check(base, &class, t)
}

fn open_sets_check(base: &CategoryBase, class: &SetClass, t: &Topology) -> Result<(), PointSet> {
    match t
        .nonempty_opens()
        .find(|&u| base.meager_mask(u.bits()) || !class.is_baire(u))
    {
        Some(u) => Err(u),
        None => Ok(()),
    }
}

/// Builds `τ(D)` and compares `M(C)`, `B(C)` with `M(τ(D))`, `Ba(τ(D))`
/// set by set. Both inclusions are always scanned in full; `witness_cap`
/// limits only how many mismatching sets are kept per direction (`None`
/// keeps all).
pub fn check_equivalence(
    base: &CategoryBase,
    d: &OperatorTable,
    witness_cap: Option<usize>,
) -> Result<EquivalenceReport> {
    let violations = validate_operator(base, d, false);
    if !violations.is_empty() {
        return Err(Error::InvalidOperator(violations));
    }
    let class = classify_all(base)?;
    let t = d_topology(base, d)?;
    Ok(compare(base, &class, t, witness_cap))
}

/// Compares a base with an arbitrary topology on the same ground set.
pub fn compare_with_topology(
    base: &CategoryBase,
    t: &Topology,
    witness_cap: Option<usize>,
) -> Result<EquivalenceReport> {
    if t.n() != base.n() {
        return Err(Error::SizeMismatch {
            expected: base.n(),
            found: t.n(),
        });
    }
    let class = classify_all(base)?;
    Ok(compare(base, &class, t.clone(), witness_cap))
}

pub(crate) fn compare(
    base: &CategoryBase,
    class: &SetClass,
    t: Topology,
    witness_cap: Option<usize>,
) -> EquivalenceReport {
    let n = base.n();
    let cap = witness_cap.unwrap_or(usize::MAX);
    let mut buckets: [Vec<PointSet>; 4] = Default::default();
    let mut counts = [0usize; 4];
    let mut record = |dir: Direction, s: u32| {
        let i = dir as usize;
        counts[i] += 1;
        if buckets[i].len() < cap {
            buckets[i].push(PointSet::raw(n, s));
        }
    };
    let (meager, baire) = (class.meager_bits(), class.baire_bits());
    for s in 0..=full_mask(n) {
        let mc = meager.contains(s as usize);
        let mt = t.first_category_mask(s);
        if mc && !mt {
            record(Direction::MeagerOnlyInBase, s);
        } else if mt && !mc {
            record(Direction::MeagerOnlyInTopology, s);
        }
        let bc = baire.contains(s as usize);
        let bt = t.baire_mask(s);
        if bc && !bt {
            record(Direction::BaireOnlyInBase, s);
        } else if bt && !bc {
            record(Direction::BaireOnlyInTopology, s);
        }
    }
    let directions = [
        Direction::MeagerOnlyInBase,
        Direction::MeagerOnlyInTopology,
        Direction::BaireOnlyInBase,
        Direction::BaireOnlyInTopology,
    ];
    let mismatches = directions
        .iter()
        .zip(buckets)
        .flat_map(|(&direction, sets)| sets.into_iter().map(move |set| Mismatch { direction, set }))
        .collect();
    let open_check = open_sets_check(base, class, &t);
    EquivalenceReport {
        meager_equal: counts[0] + counts[1] == 0,
        baire_equal: counts[2] + counts[3] == 0,
        hypothesis_holds: hypothesis_holds(base, &t),
        morgan_holds: morgan_condition(base),
        open_sets_abundant_baire: open_check.is_ok(),
        open_set_witness: open_check.err(),
        degenerate_base: base.is_degenerate(),
        topology: t,
        mismatches,
        mismatch_counts: counts,
    }
}

/// Regions with no proper subregion.
pub fn minimal_regions(base: &CategoryBase) -> SetFamily {
    let masks = (0..base.region_count())
        .filter(|&i| base.subregion_masks(i).len() == 1)
        .map(|i| base.region_masks()[i])
        .collect();
    SetFamily::from_masks(base.n(), masks)
}

/// Every region contains a minimal region.
pub fn morgan_condition(base: &CategoryBase) -> bool {
    let minimal = minimal_regions(base);
    base.region_masks()
        .iter()
        .all(|&a| minimal.masks().iter().any(|&m| m & !a == 0))
}

/// Checks that every union of minimal regions (the empty union included) is
/// open in the basic topology. The inner `Err` carries the first union that
/// is not open.
pub fn minimal_union_open_check(base: &CategoryBase) -> Result<Result<(), PointSet>> {
    let minimal = minimal_regions(base);
    let k = minimal.len();
    if k > MAX_MINIMAL_REGIONS {
        return Err(Error::Capacity {
            what: "minimal regions",
            requested: k as u64,
            limit: MAX_MINIMAL_REGIONS as u64,
        });
    }
    let t = basic_topology(base)?;
    let masks = minimal.masks();
    for pick in 0u32..(1 << k) {
        let union = (0..k)
            .filter(|&j| pick >> j & 1 == 1)
            .fold(0, |acc, j| acc | masks[j]);
        let u = PointSet::raw(base.n(), union);
        if !t.is_open(u) {
            return Ok(Err(u));
        }
    }
    Ok(Ok(()))
}
