//! Ground-set algebra: bitmask subsets, ordered set families and power-set
//! enumeration.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// Largest ground set the library will enumerate (2^24 subsets).
pub const MAX_N: usize = 24;

/// A subset of the ground set `X = {0, .., n-1}`.
///
/// Bit `i` of `bits` is set iff element `i` belongs to the set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    bits: u32,
    n: u8,
}

impl PointSet {
    pub fn new(n: usize, bits: u32) -> Result<Self> {
        check_n(n)?;
        if u64::from(bits) >= 1u64 << n {
            let element = (31 - (bits >> n).leading_zeros()) as usize + n;
            return Err(Error::ElementOutOfRange { element, n });
        }
        Ok(Self { bits, n: n as u8 })
    }

    /// Builds a set from element indices. Duplicates are ignored.
    pub fn from_elements<I: IntoIterator<Item = usize>>(n: usize, elements: I) -> Result<Self> {
        check_n(n)?;
        let mut bits = 0u32;
        for e in elements {
            if e >= n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            bits |= 1 << e;
        }
        Ok(Self { bits, n: n as u8 })
    }

    pub(crate) const fn raw(n: usize, bits: u32) -> Self {
        Self { bits, n: n as u8 }
    }

    pub fn empty(n: usize) -> Self {
        Self::raw(n, 0)
    }

    /// The whole ground set `X`.
    pub fn full(n: usize) -> Self {
        Self::raw(n, full_mask(n))
    }

    pub fn singleton(n: usize, x: usize) -> Self {
        debug_assert!(x < n);
        Self::raw(n, 1 << x)
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn n(self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        x < 32 && self.bits >> x & 1 == 1
    }

    #[inline]
    pub fn is_subset(self, other: PointSet) -> bool {
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: PointSet) -> bool {
        self.bits & other.bits == 0
    }

    /// `X - self`.
    pub fn complement(self) -> Self {
        Self::raw(self.n(), full_mask(self.n()) & !self.bits)
    }

    pub fn symmetric_difference(self, other: PointSet) -> Self {
        Self::raw(self.n(), self.bits ^ other.bits)
    }

    /// Element indices in ascending order.
    pub fn elements(self) -> Elements {
        Elements(self.bits)
    }

    /// Singleton subsets `{x}` for `x` in the set, ascending.
    pub fn singletons(self) -> impl Iterator<Item = PointSet> {
        let n = self.n();
        self.elements().map(move |x| PointSet::singleton(n, x))
    }

    /// All subsets of this set in ascending bitmask order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            n: self.n,
            set: self.bits,
            next: Some(0),
        }
    }

    pub(crate) fn ensure_n(self, n: usize) -> Result<()> {
        if self.n() == n {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                expected: n,
                found: self.n(),
            })
        }
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as the ascending element array, e.g. `[0,2]`.
impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for e in self.elements() {
            seq.serialize_element(&e)?;
        }
        seq.end()
    }
}

impl Serialize for SetFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl BitOr for PointSet {
    type Output = PointSet;
    fn bitor(self, rhs: PointSet) -> PointSet {
        debug_assert_eq!(self.n, rhs.n);
        PointSet::raw(self.n(), self.bits | rhs.bits)
    }
}

impl BitAnd for PointSet {
    type Output = PointSet;
    fn bitand(self, rhs: PointSet) -> PointSet {
        debug_assert_eq!(self.n, rhs.n);
        PointSet::raw(self.n(), self.bits & rhs.bits)
    }
}

impl Sub for PointSet {
    type Output = PointSet;
    fn sub(self, rhs: PointSet) -> PointSet {
        debug_assert_eq!(self.n, rhs.n);
        PointSet::raw(self.n(), self.bits & !rhs.bits)
    }
}

impl Not for PointSet {
    type Output = PointSet;
    fn not(self) -> PointSet {
        self.complement()
    }
}

pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }
}

/// Subsets of a fixed mask, ascending (carry-rippler enumeration).
pub struct Subsets {
    n: u8,
    set: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = PointSet;

    fn next(&mut self) -> Option<PointSet> {
        let cur = self.next?;
        let succ = cur.wrapping_sub(self.set) & self.set;
        self.next = (succ != 0).then_some(succ);
        Some(PointSet::raw(self.n as usize, cur))
    }
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n > MAX_N {
        Err(Error::Capacity {
            what: "ground-set size",
            requested: n as u64,
            limit: MAX_N as u64,
        })
    } else {
        Ok(())
    }
}

/// All `2^n` subsets of `X`, ascending by bitmask.
pub fn power_set_iter(n: usize) -> Result<impl Iterator<Item = PointSet>> {
    check_n(n)?;
    Ok((0..=full_mask(n)).map(move |b| PointSet::raw(n, b)))
}

/// An ordered, duplicate-free family of subsets of `X`.
///
/// Members are kept in ascending bitmask order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetFamily {
    n: u8,
    members: Vec<u32>,
}

impl SetFamily {
    pub fn empty(n: usize) -> Self {
        Self {
            n: n as u8,
            members: Vec::new(),
        }
    }

    /// Sorts and deduplicates; every member must live on the same ground set.
    pub fn new<I: IntoIterator<Item = PointSet>>(n: usize, sets: I) -> Result<Self> {
        check_n(n)?;
        let mut members = Vec::new();
        for s in sets {
            s.ensure_n(n)?;
            members.push(s.bits());
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self {
            n: n as u8,
            members,
        })
    }

    pub(crate) fn from_masks(n: usize, mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self {
            n: n as u8,
            members,
        }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn masks(&self) -> &[u32] {
        &self.members
    }

    pub fn get(&self, i: usize) -> Option<PointSet> {
        self.members.get(i).map(|&b| PointSet::raw(self.n(), b))
    }

    pub fn iter(&self) -> impl Iterator<Item = PointSet> + '_ {
        let n = self.n();
        self.members.iter().map(move |&b| PointSet::raw(n, b))
    }

    pub fn contains(&self, s: PointSet) -> bool {
        s.n() == self.n() && self.members.binary_search(&s.bits()).is_ok()
    }

    pub fn union(&self) -> PointSet {
        PointSet::raw(self.n(), self.members.iter().fold(0, |a, &b| a | b))
    }

    pub fn to_vec(&self) -> Vec<PointSet> {
        self.iter().collect()
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}
