//! Lexicographic k-subset enumeration and ranking.

use alloc::vec;
use alloc::vec::Vec;

/// Binomial coefficient; saturates instead of overflowing.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Iterator over the `k`-subsets of `0..n` in lexicographic order.
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations { n, current: if k <= n { Some((0..k).collect()) } else { None } }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let out = cur.clone();
        let k = cur.len();
        let mut next = cur;
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

/// Position of a sorted `k`-subset of `0..n` in lexicographic order.
pub fn subset_rank(n: usize, subset: &[usize]) -> usize {
    let k = subset.len();
    let mut rank = 0;
    let mut prev = 0;
    for (i, &c) in subset.iter().enumerate() {
        for j in prev..c {
            rank += binomial(n - 1 - j, k - 1 - i);
        }
        prev = c + 1;
    }
    rank
}

/// Members of a bitmask, ascending.
pub fn mask_members(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

pub fn mask_from(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |m, &i| m | 1 << i)
}

/// Sorts `v` in place and returns the permutation parity (`true` = odd).
pub fn sort_with_parity(v: &mut [usize]) -> bool {
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    odd
}

/// All subsets of `0..n` of every size, as bitmasks, ordered by size then lexicographically.
pub fn all_nonempty_subsets(n: usize) -> Vec<u64> {
    let mut out = vec![];
    for k in 1..=n {
        out.extend(combinations(n, k).map(|c| mask_from(&c)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_match_enumeration() {
        for (i, c) in combinations(9, 3).enumerate() {
            assert_eq!(subset_rank(9, &c), i);
        }
        assert_eq!(combinations(9, 3).count(), 84);
        assert_eq!(combinations(4, 0).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
    }

    #[test]
    fn parity() {
        let mut v = [2, 0, 1];
        assert!(!sort_with_parity(&mut v));
        assert_eq!(v, [0, 1, 2]);
        let mut w = [1, 0, 2];
        assert!(sort_with_parity(&mut w));
    }
}
