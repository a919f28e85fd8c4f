//! Singular, meager and Baire sets of a category base, with witness-producing
//! forms of the fundamental theorem and its corollary.
//!
//! On a finite ground set a set is meager iff each of its singletons is
//! singular. Singularity is hereditary, so any cover of `S` by singular sets
//! refines to the singleton cover; conversely the singleton cover is a finite
//! union. [`CategoryBase::singular_points`] caches the singular singletons, so
//! the meager test is one mask comparison.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::base::CategoryBase;
use crate::error::{Error, Result, TheoremId};
use crate::set::{check_n, full_mask, PointSet, SetFamily};

/// Below this size the per-set work is too small to be worth fanning out.
const PARALLEL_MIN_N: usize = 12;

const SINGULAR: u8 = 1;
const MEAGER: u8 = 2;
const BAIRE: u8 = 4;

/// Every region contains a subregion disjoint from `s`.
pub fn is_singular(base: &CategoryBase, s: PointSet) -> bool {
    debug_assert_eq!(s.n(), base.n());
    base.singular_mask(s.bits())
}

pub fn is_meager(base: &CategoryBase, s: PointSet) -> bool {
    debug_assert_eq!(s.n(), base.n());
    base.meager_mask(s.bits())
}

pub fn is_abundant(base: &CategoryBase, s: PointSet) -> bool {
    !is_meager(base, s)
}

/// `s ∩ D` is abundant for every subregion `D` of the region `c`.
pub fn is_abundant_everywhere_in(base: &CategoryBase, s: PointSet, c: PointSet) -> Result<bool> {
    s.ensure_n(base.n())?;
    let i = base.region_index(c)?;
    Ok(abundant_everywhere_in(base, s.bits(), i))
}

fn abundant_everywhere_in(base: &CategoryBase, s: u32, region: usize) -> bool {
    base.subregion_masks(region)
        .iter()
        .all(|&d| !base.meager_mask(s & d))
}

/// The first region in which `s` is abundant everywhere, or `None` for a
/// meager `s`.
///
/// An abundant set without such a region contradicts the fundamental theorem
/// and is reported as [`Error::TheoremViolation`].
pub fn fundamental_witness(base: &CategoryBase, s: PointSet) -> Result<Option<PointSet>> {
    s.ensure_n(base.n())?;
    if base.meager_mask(s.bits()) {
        return Ok(None);
    }
    (0..base.region_count())
        .find(|&i| abundant_everywhere_in(base, s.bits(), i))
        .map(|i| Some(PointSet::raw(base.n(), base.region_masks()[i])))
        .ok_or_else(|| {
            Error::theorem(
                TheoremId::FundamentalTheorem,
                format!("abundant set {s} is abundant everywhere in no region"),
            )
        })
}

/// Every region has a subregion in which `s` or `X - s` is meager.
pub fn is_baire(base: &CategoryBase, s: PointSet) -> bool {
    debug_assert_eq!(s.n(), base.n());
    baire_mask(base, s.bits())
}

fn baire_mask(base: &CategoryBase, s: u32) -> bool {
    (0..base.region_count()).all(|i| {
        base.subregion_masks(i)
            .iter()
            .any(|&b| base.meager_mask(s & b) || base.meager_mask(b & !s))
    })
}

/// For an abundant Baire set `b`, the first region `c` with `c - b` meager.
pub fn comeager_region(base: &CategoryBase, b: PointSet) -> Result<PointSet> {
    b.ensure_n(base.n())?;
    if base.meager_mask(b.bits()) {
        return Err(Error::InvalidInput(format!("{b} is meager, not abundant")));
    }
    if !baire_mask(base, b.bits()) {
        return Err(Error::InvalidInput(format!("{b} is not a Baire set")));
    }
    base.region_masks()
        .iter()
        .find(|&&c| base.meager_mask(c & !b.bits()))
        .map(|&c| PointSet::raw(base.n(), c))
        .ok_or_else(|| {
            Error::theorem(
                TheoremId::ComeagerRegion,
                format!("abundant Baire set {b} is comeager in no region"),
            )
        })
}

/// Singular / meager / Baire verdicts for every subset of `X`, indexed by
/// bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetClass {
    n: usize,
    singular: FixedBitSet,
    meager: FixedBitSet,
    baire: FixedBitSet,
}

impl SetClass {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_singular(&self, s: PointSet) -> bool {
        self.singular.contains(s.bits() as usize)
    }

    pub fn is_meager(&self, s: PointSet) -> bool {
        self.meager.contains(s.bits() as usize)
    }

    pub fn is_baire(&self, s: PointSet) -> bool {
        self.baire.contains(s.bits() as usize)
    }

    pub(crate) fn meager_bits(&self) -> &FixedBitSet {
        &self.meager
    }

    pub(crate) fn baire_bits(&self) -> &FixedBitSet {
        &self.baire
    }

    fn family(&self, table: &FixedBitSet) -> SetFamily {
        SetFamily::from_masks(self.n, table.ones().map(|b| b as u32).collect())
    }

    pub fn singular_class(&self) -> SetFamily {
        self.family(&self.singular)
    }

    pub fn meager_class(&self) -> SetFamily {
        self.family(&self.meager)
    }

    pub fn baire_class(&self) -> SetFamily {
        self.family(&self.baire)
    }
}

fn flags(base: &CategoryBase, s: u32) -> u8 {
    let mut f = 0;
    if base.singular_mask(s) {
        f |= SINGULAR;
    }
    if base.meager_mask(s) {
        f |= MEAGER | BAIRE;
    } else if baire_mask(base, s) {
        f |= BAIRE;
    }
    f
}

/// Classifies all `2^n` subsets. Large ground sets are split into contiguous
/// mask ranges across the rayon pool; the result does not depend on the
/// number of workers.
pub fn classify_all(base: &CategoryBase) -> Result<SetClass> {
    let n = base.n();
    check_n(n)?;
    let full = full_mask(n);
    let table: Vec<u8> = if n >= PARALLEL_MIN_N {
        (0..=full).into_par_iter().map(|s| flags(base, s)).collect()
    } else {
        (0..=full).map(|s| flags(base, s)).collect()
    };
    let size = table.len();
    let mut class = SetClass {
        n,
        singular: FixedBitSet::with_capacity(size),
        meager: FixedBitSet::with_capacity(size),
        baire: FixedBitSet::with_capacity(size),
    };
    for (s, f) in table.into_iter().enumerate() {
        class.singular.set(s, f & SINGULAR != 0);
        class.meager.set(s, f & MEAGER != 0);
        class.baire.set(s, f & BAIRE != 0);
    }
    Ok(class)
}
