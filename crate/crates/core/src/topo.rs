//! Finite topologies: interior, closure, nowhere-dense and first-category
//! sets, and the Baire property.
//!
//! Nowhere-dense sets are hereditary and closed under finite unions, so on a
//! finite space a set is of first category iff each of its singletons is
//! nowhere dense.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::Result;
use crate::set::{check_n, full_mask, PointSet, SetFamily};

#[derive(Clone, PartialEq, Eq)]
pub struct Topology {
    n: usize,
    opens: SetFamily,
    open_table: FixedBitSet,
    /// Points `x` with `{x}` nowhere dense.
    nowhere_dense_points: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TopologyViolation {
    SizeMismatch { expected: usize, found: usize },
    MissingEmpty,
    MissingFull,
    UnionNotOpen { left: PointSet, right: PointSet },
    IntersectionNotOpen { left: PointSet, right: PointSet },
}

impl fmt::Display for TopologyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyViolation::SizeMismatch { expected, found } => {
                write!(f, "family lives on n={found}, expected n={expected}")
            }
            TopologyViolation::MissingEmpty => f.write_str("empty set is not open"),
            TopologyViolation::MissingFull => f.write_str("X is not open"),
            TopologyViolation::UnionNotOpen { left, right } => {
                write!(f, "union of {left} and {right} is not open")
            }
            TopologyViolation::IntersectionNotOpen { left, right } => {
                write!(f, "intersection of {left} and {right} is not open")
            }
        }
    }
}

/// Checks that `opens` contains `∅` and `X` and is closed under pairwise
/// union and intersection. Returns the first failure found.
pub fn validate_topology(n: usize, opens: &SetFamily) -> Result<Topology, TopologyViolation> {
    if opens.n() != n {
        return Err(TopologyViolation::SizeMismatch {
            expected: n,
            found: opens.n(),
        });
    }
    let masks = opens.masks();
    let full = full_mask(n);
    let mut table = FixedBitSet::with_capacity(full as usize + 1);
    for &m in masks {
        table.insert(m as usize);
    }
    if !table.contains(0) {
        return Err(TopologyViolation::MissingEmpty);
    }
    if !table.contains(full as usize) {
        return Err(TopologyViolation::MissingFull);
    }
    for (i, &a) in masks.iter().enumerate() {
        for &b in &masks[i + 1..] {
            let pair = |kind: fn(PointSet, PointSet) -> TopologyViolation| {
                kind(PointSet::raw(n, a), PointSet::raw(n, b))
            };
            if !table.contains((a | b) as usize) {
                return Err(pair(|left, right| TopologyViolation::UnionNotOpen { left, right }));
            }
            if !table.contains((a & b) as usize) {
                return Err(pair(|left, right| TopologyViolation::IntersectionNotOpen {
                    left,
                    right,
                }));
            }
        }
    }
    Ok(Topology::assemble(n, opens.clone(), table))
}

impl Topology {
    fn assemble(n: usize, opens: SetFamily, open_table: FixedBitSet) -> Self {
        let mut t = Self {
            n,
            opens,
            open_table,
            nowhere_dense_points: 0,
        };
        t.nowhere_dense_points = (0..n)
            .filter(|&x| t.nowhere_dense_mask(1 << x))
            .fold(0, |acc, x| acc | 1 << x);
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn opens(&self) -> &SetFamily {
        &self.opens
    }

    pub fn is_open(&self, s: PointSet) -> bool {
        self.open_table.contains(s.bits() as usize)
    }

    /// Non-empty open sets; the regions of the topology viewed as a category
    /// base.
    pub fn nonempty_opens(&self) -> impl Iterator<Item = PointSet> + '_ {
        self.opens.iter().filter(|s| !s.is_empty())
    }

    /// Points whose singleton is nowhere dense.
    pub fn nowhere_dense_points(&self) -> PointSet {
        PointSet::raw(self.n, self.nowhere_dense_points)
    }

    #[inline]
    fn interior_mask(&self, s: u32) -> u32 {
        self.opens
            .masks()
            .iter()
            .filter(|&&u| u & !s == 0)
            .fold(0, |acc, &u| acc | u)
    }

    #[inline]
    fn closure_mask(&self, s: u32) -> u32 {
        let full = full_mask(self.n);
        full & !self.interior_mask(full & !s)
    }

    fn nowhere_dense_mask(&self, s: u32) -> bool {
        self.interior_mask(self.closure_mask(s)) == 0
    }

    #[inline]
    pub(crate) fn first_category_mask(&self, s: u32) -> bool {
        s & !self.nowhere_dense_points == 0
    }

    /// Union of all open `U` with `U Δ s` of first category, if any exist.
    fn baire_kernel(&self, s: u32) -> Option<u32> {
        let mut found = None;
        for &u in self.opens.masks() {
            if self.first_category_mask(u ^ s) {
                found = Some(found.unwrap_or(0) | u);
            }
        }
        found
    }

    pub(crate) fn baire_mask(&self, s: u32) -> bool {
        self.opens
            .masks()
            .iter()
            .any(|&u| self.first_category_mask(u ^ s))
    }
}

impl fmt::Debug for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Topology")
            .field("n", &self.n)
            .field("opens", &self.opens)
            .finish()
    }
}

impl Serialize for Topology {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.opens.serialize(serializer)
    }
}

/// Largest open subset of `s`.
pub fn interior(t: &Topology, s: PointSet) -> PointSet {
    PointSet::raw(t.n, t.interior_mask(s.bits()))
}

/// `X - interior(X - s)`.
pub fn closure(t: &Topology, s: PointSet) -> PointSet {
    PointSet::raw(t.n, t.closure_mask(s.bits()))
}

pub fn is_nowhere_dense(t: &Topology, s: PointSet) -> bool {
    t.nowhere_dense_mask(s.bits())
}

pub fn is_first_category(t: &Topology, s: PointSet) -> bool {
    t.first_category_mask(s.bits())
}

/// A set written as `(h - q) ∪ r` with `h` open and `q`, `r` of first
/// category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BaireDecomposition {
    pub h: PointSet,
    pub q: PointSet,
    pub r: PointSet,
}

impl BaireDecomposition {
    /// `h = ∅`, which happens exactly when the decomposed set is of first
    /// category.
    pub fn is_degenerate(&self) -> bool {
        self.h.is_empty()
    }

    pub fn recompose(&self) -> PointSet {
        (self.h - self.q) | self.r
    }
}

/// Finds an open `U` whose symmetric difference with `s` is of first
/// category and returns `h = U`, `q = U - s`, `r = s - U`.
///
/// The admissible open sets are closed under union, so the largest one is
/// returned; for `s = X` that is `X` itself.
pub fn has_baire_property(t: &Topology, s: PointSet) -> Option<BaireDecomposition> {
    let u = PointSet::raw(t.n, t.baire_kernel(s.bits())?);
    Some(BaireDecomposition {
        h: u,
        q: u - s,
        r: s - u,
    })
}

/// All first-category subsets of `X`.
pub fn meager_class(t: &Topology) -> Result<SetFamily> {
    check_n(t.n)?;
    Ok(SetFamily::from_masks(
        t.n,
        (0..=full_mask(t.n))
            .filter(|&s| t.first_category_mask(s))
            .collect(),
    ))
}

/// All subsets of `X` with the Baire property.
pub fn baire_class(t: &Topology) -> Result<SetFamily> {
    check_n(t.n)?;
    Ok(SetFamily::from_masks(
        t.n,
        (0..=full_mask(t.n)).filter(|&s| t.baire_mask(s)).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fam, ps};

    fn sierpinski() -> Topology {
        validate_topology(2, &fam(2, &[&[], &[1], &[0, 1]])).unwrap()
    }

    fn indiscrete2() -> Topology {
        validate_topology(2, &fam(2, &[&[], &[0, 1]])).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(validate_topology(2, &fam(2, &[&[], &[1], &[0, 1]])).is_ok());
        assert_eq!(
            validate_topology(2, &fam(2, &[&[], &[0], &[1]])).unwrap_err(),
            TopologyViolation::MissingFull
        );
        assert_eq!(
            validate_topology(3, &fam(3, &[&[], &[0], &[1], &[0, 1, 2]])).unwrap_err(),
            TopologyViolation::UnionNotOpen {
                left: ps(3, &[0]),
                right: ps(3, &[1])
            }
        );
        assert_eq!(
            validate_topology(2, &fam(2, &[&[1], &[0, 1]])).unwrap_err(),
            TopologyViolation::MissingEmpty
        );
    }

    #[test]
    fn interior_closure_examples() {
        let t = sierpinski();
        assert_eq!(interior(&t, ps(2, &[0])), ps(2, &[]));
        assert_eq!(closure(&t, ps(2, &[0])), ps(2, &[0]));
        assert_eq!(interior(&t, ps(2, &[0, 1])), ps(2, &[0, 1]));
    }

    #[test]
    fn nowhere_dense_examples() {
        let t = sierpinski();
        assert!(is_nowhere_dense(&t, ps(2, &[0])));
        assert!(is_first_category(&t, ps(2, &[0])));
        assert!(!is_nowhere_dense(&t, ps(2, &[1])));
        assert!(is_nowhere_dense(&t, ps(2, &[])));
        assert!(is_first_category(&t, ps(2, &[])));
    }

    #[test]
    fn baire_property_examples() {
        assert_eq!(has_baire_property(&indiscrete2(), ps(2, &[0])), None);
        let d = has_baire_property(&sierpinski(), ps(2, &[0])).unwrap();
        assert_eq!(
            d,
            BaireDecomposition {
                h: ps(2, &[]),
                q: ps(2, &[]),
                r: ps(2, &[0])
            }
        );
        assert!(d.is_degenerate());
        for t in [sierpinski(), indiscrete2()] {
            let d = has_baire_property(&t, ps(2, &[0, 1])).unwrap();
            assert_eq!((d.h, d.q, d.r), (ps(2, &[0, 1]), ps(2, &[]), ps(2, &[])));
        }
    }

    #[test]
    fn class_examples() {
        assert_eq!(meager_class(&sierpinski()).unwrap(), fam(2, &[&[], &[0]]));
        assert_eq!(baire_class(&sierpinski()).unwrap().len(), 4);
        assert_eq!(meager_class(&indiscrete2()).unwrap(), fam(2, &[&[]]));
        assert_eq!(baire_class(&indiscrete2()).unwrap(), fam(2, &[&[], &[0, 1]]));
        let all: Vec<PointSet> = crate::set::power_set_iter(3).unwrap().collect();
        let discrete = validate_topology(3, &SetFamily::new(3, all).unwrap()).unwrap();
        assert_eq!(meager_class(&discrete).unwrap(), fam(3, &[&[]]));
        assert_eq!(baire_class(&discrete).unwrap().len(), 8);
    }
}
