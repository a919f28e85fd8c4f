//! Brute-force oracles that only use the definitions, never the finite
//! reductions the library relies on.

#![allow(dead_code)]

use catbase::classify::is_singular;
use catbase::topo::{closure, interior};
use catbase::{power_set_iter, CategoryBase, PointSet, Topology};

fn subsets_of(s: PointSet) -> impl Iterator<Item = PointSet> {
    power_set_iter(s.n())
        .unwrap()
        .filter(move |t| t.is_subset(s))
}

/// Meager as a finite union of singular sets: the singular subsets of `s`
/// cover `s`.
pub fn meager_oracle(base: &CategoryBase, s: PointSet) -> bool {
    let cover = subsets_of(s)
        .filter(|&t| is_singular(base, t))
        .fold(PointSet::empty(s.n()), |a, t| a | t);
    cover == s
}

pub fn nowhere_dense_oracle(t: &Topology, s: PointSet) -> bool {
    interior(t, closure(t, s)).is_empty()
}

/// First category as a finite union of nowhere-dense sets.
pub fn first_category_oracle(t: &Topology, s: PointSet) -> bool {
    let cover = subsets_of(s)
        .filter(|&u| nowhere_dense_oracle(t, u))
        .fold(PointSet::empty(s.n()), |a, u| a | u);
    cover == s
}

/// Baire property by search over every open set.
pub fn baire_property_oracle(t: &Topology, s: PointSet) -> bool {
    t.opens()
        .iter()
        .any(|u| first_category_oracle(t, u.symmetric_difference(s)))
}
