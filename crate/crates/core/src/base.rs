//! The category base `(X, C)` and the "contains a region" primitive.

use std::fmt;

use crate::error::{Error, Result};
use crate::set::{PointSet, SetFamily};

/// A category base on `X = {0, .., n-1}`.
///
/// Only [`crate::axioms::validate_base`] hands out values of this type, so a
/// `CategoryBase` always satisfies both axioms.
#[derive(Clone, PartialEq, Eq)]
pub struct CategoryBase {
    n: usize,
    regions: SetFamily,
    /// `subregions[i]`: masks of regions contained in region `i`, ascending.
    subregions: Vec<Vec<u32>>,
    /// Points `x` with `{x}` singular.
    singular_points: u32,
}

impl CategoryBase {
    /// Caller guarantees `regions` is non-empty, duplicate-free and sorted.
    pub(crate) fn assemble(n: usize, regions: SetFamily) -> Self {
        let masks = regions.masks();
        let subregions = masks
            .iter()
            .map(|&a| masks.iter().copied().filter(|&b| b & !a == 0).collect())
            .collect();
        let mut base = Self {
            n,
            regions,
            subregions,
            singular_points: 0,
        };
        base.singular_points = (0..n)
            .filter(|&x| base.singular_mask(1 << x))
            .fold(0, |acc, x| acc | 1 << x);
        base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn regions(&self) -> &SetFamily {
        &self.regions
    }

    pub fn region_count(&self) -> usize {
        self.regions.len()
    }

    /// A single-region base, for which the disjoint-family axiom is vacuous.
    pub fn is_degenerate(&self) -> bool {
        self.regions.len() == 1
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.n)
    }

    /// Points whose singleton is singular. A set is meager iff it lies
    /// inside this mask.
    pub fn singular_points(&self) -> PointSet {
        PointSet::raw(self.n, self.singular_points)
    }

    pub(crate) fn region_masks(&self) -> &[u32] {
        self.regions.masks()
    }

    pub(crate) fn subregion_masks(&self, index: usize) -> &[u32] {
        &self.subregions[index]
    }

    pub(crate) fn region_index(&self, a: PointSet) -> Result<usize> {
        a.ensure_n(self.n)?;
        self.regions
            .masks()
            .binary_search(&a.bits())
            .map_err(|_| Error::NotARegion(a))
    }

    /// Every region contains a subregion disjoint from `s`.
    #[inline]
    pub(crate) fn singular_mask(&self, s: u32) -> bool {
        self.subregions
            .iter()
            .all(|subs| subs.iter().any(|&b| b & s == 0))
    }

    #[inline]
    pub(crate) fn meager_mask(&self, s: u32) -> bool {
        s & !self.singular_points == 0
    }

    #[inline]
    pub(crate) fn contains_region_mask(&self, s: u32) -> bool {
        self.regions.masks().iter().any(|&r| r & !s == 0)
    }

    /// Whether some region `R` satisfies `R ⊆ s`.
    pub fn contains_region(&self, s: PointSet) -> Result<bool> {
        s.ensure_n(self.n)?;
        Ok(self.contains_region_mask(s.bits()))
    }

    /// All regions contained in the region `a`, `a` itself included.
    pub fn subregions(&self, a: PointSet) -> Result<SetFamily> {
        let i = self.region_index(a)?;
        Ok(SetFamily::from_masks(self.n, self.subregions[i].clone()))
    }
}

impl fmt::Debug for CategoryBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CategoryBase")
            .field("n", &self.n)
            .field("regions", &self.regions)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{disc3, ps, sier};

    #[test]
    fn contains_region_examples() {
        let b = sier();
        assert!(b.contains_region(ps(2, &[1])).unwrap());
        assert!(!b.contains_region(ps(2, &[])).unwrap());
        assert!(!b.contains_region(ps(2, &[0])).unwrap());
    }

    #[test]
    fn contains_region_size_mismatch() {
        let err = sier().contains_region(ps(3, &[1])).unwrap_err();
        assert!(matches!(err, Error::SizeMismatch { expected: 2, found: 3 }));
    }

    #[test]
    fn subregion_examples() {
        let b = sier();
        assert_eq!(b.subregions(ps(2, &[0, 1])).unwrap().to_vec(), vec![ps(2, &[1]), ps(2, &[0, 1])]);
        assert_eq!(b.subregions(ps(2, &[1])).unwrap().to_vec(), vec![ps(2, &[1])]);
        assert_eq!(disc3().subregions(ps(3, &[0])).unwrap().to_vec(), vec![ps(3, &[0])]);
    }

    #[test]
    fn subregions_of_non_region() {
        assert!(matches!(sier().subregions(ps(2, &[0])), Err(Error::NotARegion(_))));
    }
}
