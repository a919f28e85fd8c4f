//! Seeded generators for operators and region families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::axioms::validate_base;
use crate::base::CategoryBase;
use crate::doperator::{cluster_operator, OperatorTable};
use crate::error::{Error, Result};
use crate::set::{full_mask, PointSet};

/// Attempts before [`random_operator`] falls back to the cluster operator.
pub const OPERATOR_RETRIES: usize = 64;

/// SplitMix64 finalizer; used to derive independent per-job seeds.
pub fn mix(a: u64, b: u64) -> u64 {
    let mut z = a ^ b.wrapping_add(0x9E37_79B9_7F4A_7C15).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A random valid D-operator for `base`, deterministic in `seed`.
///
/// Singular singletons map to `∅`; every other singleton gets an arbitrary
/// image; the table is closed by additivity; draws with `D(X) ≠ X` are
/// rejected. The second component is `true` when all retries were rejected
/// and the cluster operator was returned instead.
pub fn random_operator_with_fallback(
    base: &CategoryBase,
    seed: u64,
) -> Result<(OperatorTable, bool)> {
    let n = base.n();
    let full = full_mask(n);
    let singular = base.singular_points().bits();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..OPERATOR_RETRIES {
        let images: Vec<u32> = (0..n)
            .map(|x| {
                if singular >> x & 1 == 1 {
                    0
                } else {
                    rng.gen::<u32>() & full
                }
            })
            .collect();
        if images.iter().fold(0, |a, &b| a | b) != full {
            continue;
        }
        let d = OperatorTable::from_fn(n, |s| {
            PointSet::raw(n, s.elements().fold(0, |acc, x| acc | images[x]))
        })?;
        return Ok((d, false));
    }
    Ok((cluster_operator(base)?, true))
}

pub fn random_operator(base: &CategoryBase, seed: u64) -> Result<OperatorTable> {
    random_operator_with_fallback(base, seed).map(|(d, _)| d)
}

/// A random family of non-empty subsets of `X`, sorted. Each subset is kept
/// with a per-family density drawn uniformly, so both sparse and dense
/// families occur.
pub fn random_family(n: usize, rng: &mut impl Rng) -> Vec<u32> {
    let full = full_mask(n);
    let density: f64 = rng.gen_range(0.05..0.95);
    let mut fam: Vec<u32> = (1..=full).filter(|_| rng.gen_bool(density)).collect();
    if fam.is_empty() {
        fam.push(full);
    }
    fam
}

/// Draws random families until `count` of them validate, giving up after
/// `max_attempts` draws.
pub fn random_valid_bases(
    n: usize,
    count: usize,
    seed: u64,
    budget: u64,
    max_attempts: usize,
) -> Result<Vec<CategoryBase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..max_attempts {
        if out.len() == count {
            break;
        }
        let fam: Vec<PointSet> = random_family(n, &mut rng)
            .into_iter()
            .map(|m| PointSet::raw(n, m))
            .collect();
        match validate_base(n, &fam, budget) {
            Ok(b) => out.push(b),
            Err(Error::InvalidBase(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
