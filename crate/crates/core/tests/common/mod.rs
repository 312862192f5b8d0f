#![allow(dead_code)]

use dkc_core::{Clique, Graph, NodeId};
use proptest::prelude::*;

/// All pairwise-adjacent k-subsets, by plain combination search.
pub fn brute_cliques(g: &Graph, k: usize) -> Vec<Clique> {
    fn rec(g: &Graph, k: usize, start: usize, cur: &mut Vec<NodeId>, out: &mut Vec<Clique>) {
        if cur.len() == k {
            out.push(Clique::new(cur.clone()));
            return;
        }
        for v in start..g.n() {
            let v = v as NodeId;
            if cur.iter().all(|&u| g.has_edge(u, v)) {
                cur.push(v);
                rec(g, k, v as usize + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(g, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Maximum number of pairwise disjoint cliques over every subset.
pub fn brute_max_disjoint(cliques: &[Clique]) -> usize {
    assert!(
        cliques.len() <= 24,
        "exhaustive subset search on {} cliques",
        cliques.len()
    );
    let mut best = 0;
    for mask in 0u32..(1 << cliques.len()) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let chosen: Vec<&Clique> = (0..cliques.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &cliques[i])
            .collect();
        let ok = chosen
            .iter()
            .enumerate()
            .all(|(i, a)| chosen[i + 1..].iter().all(|b| a.is_disjoint(b)));
        if ok {
            best = size;
        }
    }
    best
}

/// Random simple graph on `2..=max_n` nodes with edge density around `p`.
pub fn arb_graph(max_n: usize, p: f64) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(proptest::bool::weighted(p), pairs).prop_map(move |mask| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n as NodeId {
                for v in u + 1..n as NodeId {
                    if mask[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, edges)
        })
    })
}
