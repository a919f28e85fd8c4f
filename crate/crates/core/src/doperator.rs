//! D-operators as extensional tables, the cluster-point operator, and the
//! topology `τ(D) = { S : D(X - S) ⊆ X - S }`.
//!
//! A D-operator fixes `X`, sends singular sets to `∅` and is finitely
//! additive. On a finite ground set additivity is equivalent to
//! `D(S) = ∪_{x ∈ S} D({x})` for every `S` (with `D(∅) = ∅`), which is what
//! the default validator checks. `paranoid` additionally tries every pair.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::base::CategoryBase;
use crate::error::{Error, Result, TheoremId};
use crate::set::{check_n, full_mask, PointSet, SetFamily};
use crate::topo::{validate_topology, Topology};

/// A total map from subsets of `X` to subsets of `X`, indexed by bitmask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OperatorTable {
    n: usize,
    table: Vec<u32>,
}

impl OperatorTable {
    pub fn new(n: usize, table: Vec<u32>) -> Result<Self> {
        check_n(n)?;
        let size = 1usize << n;
        if table.len() != size {
            return Err(Error::InvalidInput(format!(
                "operator table has {} entries, expected {size}",
                table.len()
            )));
        }
        for &image in &table {
            PointSet::new(n, image)?;
        }
        Ok(Self { n, table })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(PointSet) -> PointSet) -> Result<Self> {
        check_n(n)?;
        let table = (0..=full_mask(n))
            .map(|s| f(PointSet::raw(n, s)).bits() & full_mask(n))
            .collect();
        Ok(Self { n, table })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, |s| s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn apply(&self, s: PointSet) -> PointSet {
        PointSet::raw(self.n, self.table[s.bits() as usize])
    }

    #[inline]
    pub(crate) fn apply_mask(&self, s: u32) -> u32 {
        self.table[s as usize]
    }

    /// `(S, D(S))` for every subset, ascending by `S`.
    pub fn entries(&self) -> impl Iterator<Item = (PointSet, PointSet)> + '_ {
        self.table
            .iter()
            .enumerate()
            .map(|(s, &d)| (PointSet::raw(self.n, s as u32), PointSet::raw(self.n, d)))
    }
}

impl fmt::Debug for OperatorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries()).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OperatorViolation {
    SizeMismatch { expected: usize, found: usize },
    /// `D(X) ≠ X`.
    FullNotFixed { image: PointSet },
    /// `set` is singular but `D(set) ≠ ∅`.
    SingularNotEmpty { set: PointSet, image: PointSet },
    /// `D(set)` differs from the union of `D({x})` over `x ∈ set`.
    NotSingletonAdditive {
        set: PointSet,
        image: PointSet,
        expected: PointSet,
    },
    /// `D(left ∪ right) ≠ D(left) ∪ D(right)`.
    NotAdditive { left: PointSet, right: PointSet },
}

impl fmt::Display for OperatorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorViolation::SizeMismatch { expected, found } => {
                write!(f, "operator lives on n={found}, base on n={expected}")
            }
            OperatorViolation::FullNotFixed { image } => write!(f, "D(X) = {image}, not X"),
            OperatorViolation::SingularNotEmpty { set, image } => {
                write!(f, "{set} is singular but D({set}) = {image}")
            }
            OperatorViolation::NotSingletonAdditive {
                set,
                image,
                expected,
            } => write!(f, "D({set}) = {image}, union over singletons is {expected}"),
            OperatorViolation::NotAdditive { left, right } => {
                write!(f, "D({left} ∪ {right}) ≠ D({left}) ∪ D({right})")
            }
        }
    }
}

/// Checks the D-operator conditions against `base`; an empty result means
/// the table is valid.
pub fn validate_operator(
    base: &CategoryBase,
    d: &OperatorTable,
    paranoid: bool,
) -> Vec<OperatorViolation> {
    let n = base.n();
    if d.n != n {
        return vec![OperatorViolation::SizeMismatch {
            expected: n,
            found: d.n,
        }];
    }
    let full = full_mask(n);
    let mut out = Vec::new();
    if d.apply_mask(full) != full {
        out.push(OperatorViolation::FullNotFixed {
            image: d.apply(PointSet::full(n)),
        });
    }
    for s in 0..=full {
        if d.table[s as usize] != 0 && base.singular_mask(s) {
            out.push(OperatorViolation::SingularNotEmpty {
                set: PointSet::raw(n, s),
                image: PointSet::raw(n, d.table[s as usize]),
            });
        }
    }
    for s in 0..=full {
        let expected = PointSet::raw(n, s)
            .elements()
            .fold(0, |acc, x| acc | d.table[1 << x]);
        if d.table[s as usize] != expected {
            out.push(OperatorViolation::NotSingletonAdditive {
                set: PointSet::raw(n, s),
                image: PointSet::raw(n, d.table[s as usize]),
                expected: PointSet::raw(n, expected),
            });
        }
    }
    if paranoid {
        for s in 0..=full {
            for t in s..=full {
                if d.table[(s | t) as usize] != d.table[s as usize] | d.table[t as usize] {
                    out.push(OperatorViolation::NotAdditive {
                        left: PointSet::raw(n, s),
                        right: PointSet::raw(n, t),
                    });
                }
            }
        }
    }
    out
}

/// Points at which `s` is locally abundant: `x` such that some region
/// `A ∋ x` has `s ∩ B` abundant for every subregion `B ⊆ A` containing `x`.
pub fn cluster_points(base: &CategoryBase, s: PointSet) -> PointSet {
    debug_assert_eq!(s.n(), base.n());
    PointSet::raw(base.n(), cluster_mask(base, s.bits()))
}

fn cluster_mask(base: &CategoryBase, s: u32) -> u32 {
    let mut out = 0;
    for x in 0..base.n() {
        let bit = 1u32 << x;
        let locally_abundant = base.region_masks().iter().enumerate().any(|(i, &a)| {
            a & bit != 0
                && base
                    .subregion_masks(i)
                    .iter()
                    .filter(|&&b| b & bit != 0)
                    .all(|&b| !base.meager_mask(s & b))
        });
        if locally_abundant {
            out |= bit;
        }
    }
    out
}

/// The cluster-point operator `S ↦ C(S)` as a table. The result is checked
/// against the D-operator conditions; a failure is a theorem violation.
pub fn cluster_operator(base: &CategoryBase) -> Result<OperatorTable> {
    let n = base.n();
    check_n(n)?;
    let table = (0..=full_mask(n)).map(|s| cluster_mask(base, s)).collect();
    let d = OperatorTable { n, table };
    let violations = validate_operator(base, &d, false);
    if let Some(v) = violations.first() {
        return Err(Error::theorem(
            TheoremId::ClusterOperator,
            format!("cluster operator of {:?} fails: {v}", base.regions()),
        ));
    }
    Ok(d)
}

/// `τ(D)`. `d` is assumed valid for `base`; the result is checked against
/// the topology axioms.
pub fn d_topology(base: &CategoryBase, d: &OperatorTable) -> Result<Topology> {
    let n = base.n();
    if d.n != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: d.n,
        });
    }
    let full = full_mask(n);
    let opens: Vec<u32> = (0..=full)
        .filter(|&s| {
            let closed = full & !s;
            d.apply_mask(closed) & !closed == 0
        })
        .collect();
    validate_topology(n, &SetFamily::from_masks(n, opens)).map_err(|v| {
        Error::theorem(
            TheoremId::DTopology,
            format!("τ(D) over {:?} is not a topology: {v}", base.regions()),
        )
    })
}

/// `τ(C)` for the cluster-point operator `C`.
pub fn basic_topology(base: &CategoryBase) -> Result<Topology> {
    d_topology(base, &cluster_operator(base)?)
}

/// A failure of one of the consequences of the D-operator conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum LawViolation {
    /// `s ⊆ t` but `D(s) ⊄ D(t)`.
    Monotonicity { s: PointSet, t: PointSet },
    /// `D(s) - D(t) ⊄ D(s - t)`.
    DifferenceBound { s: PointSet, t: PointSet },
    /// `D(∩ sets) ⊄ ∩ D(sets)`.
    IntersectionBound { sets: Vec<PointSet> },
}

/// Pair budget above which pairs are sampled rather than enumerated.
const LAW_PAIR_LIMIT: u64 = 1 << 20;
const LAW_SAMPLED_PAIRS: usize = 10_000;

/// Checks monotonicity and the difference bound on all pairs (or 10^4
/// sampled pairs when `4^n` is large) and the intersection bound on
/// `collections` random collections. Sampling is seeded by `seed`.
pub fn check_derived_laws(
    d: &OperatorTable,
    collections: usize,
    seed: u64,
) -> Result<(), LawViolation> {
    let n = d.n;
    let full = full_mask(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let check_pair = |s: u32, t: u32| -> Result<(), LawViolation> {
        let (ds, dt) = (d.apply_mask(s), d.apply_mask(t));
        if s & !t == 0 && ds & !dt != 0 {
            return Err(LawViolation::Monotonicity {
                s: PointSet::raw(n, s),
                t: PointSet::raw(n, t),
            });
        }
        if ds & !dt & !d.apply_mask(s & !t) != 0 {
            return Err(LawViolation::DifferenceBound {
                s: PointSet::raw(n, s),
                t: PointSet::raw(n, t),
            });
        }
        Ok(())
    };
    let pairs = 1u64 << (2 * n);
    if pairs <= LAW_PAIR_LIMIT {
        for s in 0..=full {
            for t in 0..=full {
                check_pair(s, t)?;
            }
        }
    } else {
        for _ in 0..LAW_SAMPLED_PAIRS {
            let s = rng.gen::<u32>() & full;
            // bias towards comparable pairs so monotonicity is exercised
            let t = if rng.gen_bool(0.5) { s | (rng.gen::<u32>() & full) } else { rng.gen::<u32>() & full };
            check_pair(s, t)?;
        }
    }
    let all: Vec<u32> = (0..=full).collect();
    for _ in 0..collections {
        let k = rng.gen_range(1..=4.min(all.len()));
        let sets: Vec<u32> = all.choose_multiple(&mut rng, k).copied().collect();
        let meet = sets.iter().fold(full, |acc, &s| acc & s);
        let image_meet = sets.iter().fold(full, |acc, &s| acc & d.apply_mask(s));
        if d.apply_mask(meet) & !image_meet != 0 {
            return Err(LawViolation::IntersectionBound {
                sets: sets.into_iter().map(|s| PointSet::raw(n, s)).collect(),
            });
        }
    }
    Ok(())
}
