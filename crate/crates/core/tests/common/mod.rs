//! Independent oracles shared by the integration tests: plain set unions
//! and subset enumeration, no bitsets and no pruning.
#![allow(dead_code)]

use std::collections::BTreeSet;

use shortlist_core::graph::{random_regular_graph, BipartiteGraph, RandomGraphSeed, Universe};
use shortlist_core::BitLabel;

pub fn union_size(g: &dyn BipartiteGraph, subset: &[BitLabel]) -> usize {
    subset
        .iter()
        .flat_map(|x| g.neighbors(x).expect("left node"))
        .collect::<BTreeSet<_>>()
        .len()
}

/// Calls `visit` on every `size`-subset of `0..n` in lexicographic order
/// until it returns false.
pub fn for_each_subset(n: usize, size: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    fn go(
        start: usize,
        n: usize,
        size: usize,
        cur: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == size {
            return visit(cur);
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            if !go(i + 1, n, size, cur, visit) {
                return false;
            }
            cur.pop();
        }
        true
    }
    go(0, n, size, &mut Vec::new(), &mut visit);
}

/// Smallest neighbor union over all `size`-subsets.
pub fn min_union(g: &dyn BipartiteGraph, size: usize) -> usize {
    let left = g.left().to_vec().unwrap();
    let mut best = usize::MAX;
    for_each_subset(left.len(), size, |idx| {
        let s: Vec<BitLabel> = idx.iter().map(|&i| left[i].clone()).collect();
        best = best.min(union_size(g, &s));
        true
    });
    best
}

pub fn random_graph(left_len: usize, right_len: usize, degree: usize, seed: u64) -> shortlist_core::graph::RandomGraph {
    random_regular_graph(
        Universe::single(left_len),
        Universe::single(right_len),
        RandomGraphSeed { seed, degree },
    )
    .unwrap()
}

pub fn bits(s: &str) -> BitLabel {
    s.parse().unwrap()
}
