//! Brute-force referees for unit tests. Deliberately naive: they share no
//! code with the enumeration and solver paths they check.

use crate::clique::Clique;
use crate::graph::{Graph, NodeId};

/// Every k-subset of nodes that is pairwise adjacent, in canonical order.
pub fn brute_cliques(g: &Graph, k: usize) -> Vec<Clique> {
    fn rec(g: &Graph, k: usize, start: NodeId, cur: &mut Vec<NodeId>, out: &mut Vec<Clique>) {
        if cur.len() == k {
            out.push(Clique::new(cur.clone()));
            return;
        }
        for v in start..g.n() as NodeId {
            if cur.iter().all(|&u| g.has_edge(u, v)) {
                cur.push(v);
                rec(g, k, v + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(g, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Largest number of pairwise disjoint cliques, by exhaustive search.
pub fn brute_max_disjoint(cliques: &[Clique]) -> usize {
    fn rec(cliques: &[Clique], i: usize, used: &mut Vec<bool>, size: usize, best: &mut usize) {
        if size + (cliques.len() - i) <= *best {
            return;
        }
        if i == cliques.len() {
            *best = size;
            return;
        }
        let c = &cliques[i];
        if c.members().iter().all(|&u| !used[u as usize]) {
            c.members().iter().for_each(|&u| used[u as usize] = true);
            rec(cliques, i + 1, used, size + 1, best);
            c.members().iter().for_each(|&u| used[u as usize] = false);
        }
        rec(cliques, i + 1, used, size, best);
    }
    let n = cliques
        .iter()
        .flat_map(|c| c.members().iter())
        .map(|&u| u as usize + 1)
        .max()
        .unwrap_or(0);
    let mut best = 0;
    rec(cliques, 0, &mut vec![false; n], 0, &mut best);
    best
}
