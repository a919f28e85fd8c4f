//! Exhaustive enumeration of candidate region families and of topologies.

use crate::axioms::validate_base;
use crate::base::CategoryBase;
use crate::classify::SetClass;
use crate::error::{Error, Result};
use crate::set::{full_mask, PointSet, SetFamily};
use crate::topo::{validate_topology, Topology};

use super::canon::{canonical_form, permutations};
use super::{Mode, SweepConfig};

/// Exhaustive base enumeration needs `2^(2^n - 1)` candidates.
pub const MAX_EXHAUSTIVE_BASE_N: usize = 3;
/// Reachable with `SweepConfig::extended`.
pub const MAX_EXTENDED_BASE_N: usize = 4;
pub const MAX_TOPOLOGY_N: usize = 4;

/// Number of duplicate-free non-empty families of non-empty subsets.
pub fn candidate_count(n: usize) -> u64 {
    (1u64 << ((1u64 << n) - 1)) - 1
}

/// Decodes candidate `index` (in `1..=candidate_count(n)`): bit `j` selects
/// the subset with mask `j + 1`.
pub fn candidate_family(index: u64) -> Vec<u32> {
    (0..63)
        .filter(|j| index >> j & 1 == 1)
        .map(|j| j as u32 + 1)
        .collect()
}

pub(crate) fn check_exhaustive(cfg: &SweepConfig) -> Result<()> {
    let limit = if cfg.extended {
        MAX_EXTENDED_BASE_N
    } else {
        MAX_EXHAUSTIVE_BASE_N
    };
    if cfg.n > limit {
        return Err(Error::Capacity {
            what: "exhaustive base enumeration ground-set size",
            requested: cfg.n as u64,
            limit: limit as u64,
        });
    }
    if cfg.n == 0 {
        return Err(Error::InvalidInput("ground set must be non-empty".into()));
    }
    Ok(())
}

/// Every candidate family on `cfg.n` points that passes the axioms, in
/// candidate order. With `cfg.canonicalize` only the canonical
/// representative of each isomorphism class is kept. Inner errors are
/// budget exhaustion on a single candidate.
pub fn enumerate_bases(
    cfg: &SweepConfig,
) -> Result<impl Iterator<Item = Result<CategoryBase>> + '_> {
    if cfg.mode != Mode::Exhaustive {
        return Err(Error::InvalidInput(
            "enumerate_bases requires exhaustive mode".into(),
        ));
    }
    check_exhaustive(cfg)?;
    let n = cfg.n;
    let perms = permutations(n);
    Ok((1..=candidate_count(n)).filter_map(move |index| {
        let fam = candidate_family(index);
        if cfg.canonicalize && canonical_form(&fam, &perms) != fam {
            return None;
        }
        let regions: Vec<PointSet> = fam.iter().map(|&m| PointSet::raw(n, m)).collect();
        match validate_base(n, &regions, cfg.budget) {
            Ok(b) => Some(Ok(b)),
            Err(Error::InvalidBase(_)) => None,
            Err(e) => Some(Err(e)),
        }
    }))
}

/// All topologies on `n ≤ 4` points, found by brute force over the families
/// of subsets strictly between `∅` and `X`.
pub fn enumerate_topologies(n: usize) -> Result<Vec<Topology>> {
    if n > MAX_TOPOLOGY_N {
        return Err(Error::Capacity {
            what: "topology enumeration ground-set size",
            requested: n as u64,
            limit: MAX_TOPOLOGY_N as u64,
        });
    }
    if n == 0 {
        return Err(Error::InvalidInput("ground set must be non-empty".into()));
    }
    let full = full_mask(n);
    let middle: Vec<u32> = (1..full).collect();
    let mut out = Vec::new();
    for pick in 0u64..(1u64 << middle.len()) {
        let mut opens = vec![0, full];
        opens.extend(
            middle
                .iter()
                .enumerate()
                .filter(|&(j, _)| pick >> j & 1 == 1)
                .map(|(_, &m)| m),
        );
        if let Ok(t) = validate_topology(n, &SetFamily::from_masks(n, opens)) {
            out.push(t);
        }
    }
    Ok(out)
}

/// Index of the first topology whose first-category and Baire-property
/// classes coincide with the base's meager and Baire classes.
pub fn find_equivalent_topology(class: &SetClass, topologies: &[Topology]) -> Option<usize> {
    let n = class.n();
    topologies.iter().position(|t| {
        t.n() == n
            && (0..=full_mask(n)).all(|s| {
                let p = PointSet::raw(n, s);
                class.is_meager(p) == t.first_category_mask(s) && class.is_baire(p) == t.baire_mask(s)
            })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::DEFAULT_BUDGET;

    fn exhaustive(n: usize) -> SweepConfig {
        SweepConfig {
            n,
            ..SweepConfig::default()
        }
    }

    #[test]
    fn candidate_counts() {
        assert_eq!(candidate_count(1), 1);
        assert_eq!(candidate_count(2), 7);
        assert_eq!(candidate_count(3), 127);
        assert_eq!(candidate_count(4), 32767);
    }

    #[test]
    fn one_point_has_one_base() {
        let bases: Vec<_> = enumerate_bases(&exhaustive(1))
            .unwrap()
            .collect::<Result<_>>()
            .unwrap();
        assert_eq!(bases.len(), 1);
        assert_eq!(bases[0].regions().masks(), &[1]);
    }

    #[test]
    fn two_point_bases_golden() {
        let bases: Vec<CategoryBase> = enumerate_bases(&exhaustive(2))
            .unwrap()
            .collect::<Result<_>>()
            .unwrap();
        let fams: Vec<Vec<u32>> = bases.iter().map(|b| b.regions().masks().to_vec()).collect();
        // hand check of the 7 candidates: {0} and {1} alone leave a point
        // uncovered, the other five pass both axioms
        assert_eq!(
            fams,
            vec![
                vec![1, 2],
                vec![3],
                vec![1, 3],
                vec![2, 3],
                vec![1, 2, 3],
            ]
        );
    }

    #[test]
    fn exhaustive_over_cap() {
        assert!(enumerate_bases(&exhaustive(4)).err().unwrap().is_capacity());
        let cfg = SweepConfig {
            extended: true,
            ..exhaustive(4)
        };
        assert!(enumerate_bases(&cfg).is_ok());
        let cfg = SweepConfig {
            extended: true,
            budget: DEFAULT_BUDGET,
            ..exhaustive(5)
        };
        assert!(enumerate_bases(&cfg).err().unwrap().is_capacity());
    }

    #[test]
    fn topology_counts() {
        assert_eq!(enumerate_topologies(1).unwrap().len(), 1);
        assert_eq!(enumerate_topologies(2).unwrap().len(), 4);
        assert_eq!(enumerate_topologies(3).unwrap().len(), 29);
        assert!(enumerate_topologies(5).unwrap_err().is_capacity());
    }
}
