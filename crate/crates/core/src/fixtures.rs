//! Small named bases used throughout tests and examples.
//!
//! * `SIER`: n = 2, regions `{1}`, `{0,1}` (Sierpiński-like).
//! * `INDISC2`: n = 2, single region `X`.
//! * `DISC3`: n = 3, regions `{0}`, `{1}`, `{2}`, `X`.

use crate::axioms::{validate_base, DEFAULT_BUDGET};
use crate::base::CategoryBase;
use crate::set::{PointSet, SetFamily};

/// Panics on out-of-range elements; fixtures only.
pub fn ps(n: usize, elements: &[usize]) -> PointSet {
    PointSet::from_elements(n, elements.iter().copied()).expect("fixture element in range")
}

pub fn fam(n: usize, sets: &[&[usize]]) -> SetFamily {
    SetFamily::new(n, sets.iter().map(|s| ps(n, s))).expect("fixture family")
}

pub fn sier_regions() -> Vec<PointSet> {
    vec![ps(2, &[1]), ps(2, &[0, 1])]
}

pub fn indisc2_regions() -> Vec<PointSet> {
    vec![ps(2, &[0, 1])]
}

pub fn disc3_regions() -> Vec<PointSet> {
    vec![ps(3, &[0]), ps(3, &[1]), ps(3, &[2]), ps(3, &[0, 1, 2])]
}

pub fn sier() -> CategoryBase {
    validate_base(2, &sier_regions(), DEFAULT_BUDGET).expect("SIER is a category base")
}

pub fn indisc2() -> CategoryBase {
    validate_base(2, &indisc2_regions(), DEFAULT_BUDGET).expect("INDISC2 is a category base")
}

pub fn disc3() -> CategoryBase {
    validate_base(3, &disc3_regions(), DEFAULT_BUDGET).expect("DISC3 is a category base")
}
