//! Isomorphism rejection for set families under point permutations.

use itertools::Itertools;

/// All permutations of `0..n`, as image tables.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

#[inline]
pub fn permute_mask(mask: u32, perm: &[usize]) -> u32 {
    perm.iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .fold(0, |acc, (_, &j)| acc | 1 << j)
}

fn image(family: &[u32], perm: &[usize]) -> Vec<u32> {
    let mut out: Vec<u32> = family.iter().map(|&m| permute_mask(m, perm)).collect();
    out.sort_unstable();
    out
}

/// Lexicographically least sorted mask list over all permutations.
pub fn canonical_form(family: &[u32], perms: &[Vec<usize>]) -> Vec<u32> {
    perms
        .iter()
        .map(|p| image(family, p))
        .min()
        .unwrap_or_else(|| family.to_vec())
}

/// Number of distinct images of `family` under `perms`.
pub fn orbit_size(family: &[u32], perms: &[Vec<usize>]) -> u64 {
    perms.iter().map(|p| image(family, p)).unique().count() as u64
}
