//! Exhaustive generation of unlabeled rooted trees and forests, used by
//! the identity sweeps and the extremal-tree checks.

use super::forest::{parse_forest, RootedForest};

/// Tree codes of each size up to n, canonical form: children codes
/// concatenated in weakly decreasing (size, index) order.
fn codes_by_size(n: usize) -> Vec<Vec<String>> {
    let mut by_size: Vec<Vec<String>> = vec![Vec::new(); n + 1];
    if n == 0 {
        return by_size;
    }
    by_size[1].push("()".to_string());
    for s in 2..=n {
        let mut acc = String::new();
        let mut out = Vec::new();
        multisets(s - 1, s - 1, usize::MAX, &by_size, &mut acc, &mut out);
        by_size[s] = out.into_iter().map(|body| format!("({body})")).collect();
    }
    by_size
}

/// Appends every concatenation of tree codes with total size `remaining`,
/// as a weakly decreasing (size, index) sequence capped by
/// (max_size, max_idx).
fn multisets(
    remaining: usize,
    max_size: usize,
    max_idx: usize,
    by_size: &[Vec<String>],
    acc: &mut String,
    out: &mut Vec<String>,
) {
    if remaining == 0 {
        out.push(acc.clone());
        return;
    }
    for size in (1..=max_size.min(remaining)).rev() {
        let idx_cap = if size == max_size {
            max_idx.min(by_size[size].len())
        } else {
            by_size[size].len()
        };
        for idx in 0..idx_cap {
            let code = &by_size[size][idx];
            let len_before = acc.len();
            acc.push_str(code);
            multisets(remaining - size, size, idx + 1, by_size, acc, out);
            acc.truncate(len_before);
        }
    }
}

/// All unlabeled rooted trees with n nodes, deterministic order.
pub fn all_trees(n: usize) -> Vec<RootedForest> {
    codes_by_size(n)
        .pop()
        .unwrap_or_default()
        .iter()
        .map(|code| parse_forest(code).expect("generated code parses"))
        .collect()
}

/// All unlabeled rooted forests with n nodes total, deterministic order.
pub fn all_forests(n: usize) -> Vec<RootedForest> {
    if n == 0 {
        return vec![RootedForest::empty()];
    }
    let by_size = codes_by_size(n);
    let mut acc = String::new();
    let mut out = Vec::new();
    multisets(n, n, usize::MAX, &by_size, &mut acc, &mut out);
    out.iter()
        .map(|code| parse_forest(code).expect("generated code parses"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forests::forest_rank;
    use std::collections::BTreeSet;

    #[test]
    fn tree_counts() {
        let want = [1usize, 1, 2, 4, 9, 20, 48, 115];
        for (i, &count) in want.iter().enumerate() {
            let trees = all_trees(i + 1);
            assert_eq!(trees.len(), count, "n = {}", i + 1);
            for t in &trees {
                assert_eq!(t.n(), i + 1);
                assert!(t.is_tree());
            }
            // no duplicates under the canonical encoding
            let texts: BTreeSet<String> = trees.iter().map(|t| t.to_text()).collect();
            assert_eq!(texts.len(), count);
        }
    }

    #[test]
    fn forest_counts_shift_tree_counts() {
        // adding a root over a forest of size n gives a tree of size n+1
        for n in 1..=6 {
            assert_eq!(all_forests(n).len(), all_trees(n + 1).len(), "n = {n}");
        }
        let sizes: BTreeSet<usize> = all_forests(4).iter().map(|f| f.roots().len()).collect();
        assert!(sizes.contains(&1) && sizes.contains(&4));
    }

    #[test]
    fn ranks_are_covered() {
        let ranks: BTreeSet<u64> = all_trees(6).iter().map(forest_rank).collect();
        assert_eq!(ranks, (2..=6).collect::<BTreeSet<u64>>());
    }
}
