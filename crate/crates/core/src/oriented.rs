//! Acyclic orientation of a graph under a node ordering, with node removal.

use crate::graph::{Graph, NodeId};
use crate::ordering::NodeOrdering;

/// Number of valid out-neighbors.G` with every edge directed from the higher-ranked endpoint to the lower.
///
/// Out-lists are sorted by descending rank of the target. Removing a node
/// invalidates it immediately but only rewrites neighbouring lists on the next
/// [`OrientedGraph::compact`]; every public accessor already skips invalid
/// nodes.
#[derive(Clone, Debug)]
pub struct OrientedGraph {
    out: Vec<Vec<NodeId>>,
    inn: Vec<Vec<NodeId>>,
    live_out: Vec<u32>,
    valid: Vec<bool>,
    ordering: NodeOrdering,
    arcs: usize,
}

/// Orients `g` by `ordering`: `u -> v` iff `eta(u) > eta(v)`.
pub fn orient(g: &Graph, ordering: &NodeOrdering) -> OrientedGraph {
    assert_eq!(g.n(), ordering.len(), "ordering does not cover the graph");
    let n = g.n();
    let mut out = vec![Vec::new(); n];
    let mut inn = vec![Vec::new(); n];
    for u in g.nodes() {
        let ru = ordering.rank(u);
        for &v in g.neighbors(u) {
            if ru > ordering.rank(v) {
                out[u as usize].push(v);
            } else {
                inn[u as usize].push(v);
            }
        }
        out[u as usize].sort_unstable_by_key(|&v| std::cmp::Reverse(ordering.rank(v)));
    }
    let live_out = out.iter().map(|l| l.len() as u32).collect();
    OrientedGraph {
        out,
        inn,
        live_out,
        valid: vec![true; n],
        ordering: ordering.clone(),
        arcs: g.m(),
    }
}

impl OrientedGraph {
    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn ordering(&self) -> &NodeOrdering {
        &self.ordering
    }

    #[inline]
    pub fn rank(&self, u: NodeId) -> u32 {
        self.ordering.rank(u)
    }

    #[inline]
    pub fn is_valid(&self, u: NodeId) -> bool {
        self.valid[u as usize]
    }

    /// Number of arcs between valid nodes.
    pub fn arc_count(&self) -> usize {
        self.arcs
    }

    /// Number of valid out-neighbors.
    #[inline]
    pub fn out_degree(&self, u: NodeId) -> usize {
        self.live_out[u as usize] as usize
    }

    /// Valid out-neighbours of `u`, highest rank first.
    pub fn out_neighbors(&self, u: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.out[u as usize]
            .iter()
            .copied()
            .filter(move |&v| self.valid[v as usize])
    }

    /// The stored out-list, which may still hold removed nodes.
    #[inline]
    pub(crate) fn raw_out(&self, u: NodeId) -> &[NodeId] {
        &self.out[u as usize]
    }

    /// Drops removed nodes from `u`'s stored out-list.
    pub fn compact(&mut self, u: NodeId) {
        let i = u as usize;
        if self.out[i].len() != self.live_out[i] as usize {
            let valid = &self.valid;
            self.out[i].retain(|&v| valid[v as usize]);
        }
    }

    /// Invalidates `u` and detaches all of its arcs. Idempotent.
    pub fn remove_node(&mut self, u: NodeId) {
        let i = u as usize;
        if !std::mem::replace(&mut self.valid[i], false) {
            return;
        }
        for &w in &self.inn[i] {
            if self.valid[w as usize] {
                self.live_out[w as usize] -= 1;
                self.arcs -= 1;
            }
        }
        self.arcs -= self.live_out[i] as usize;
        self.live_out[i] = 0;
        self.out[i] = Vec::new();
        self.inn[i] = Vec::new();
    }
}

/// Intersects two lists that are both sorted by descending rank.
pub(crate) fn intersect_desc(a: &[NodeId], b: &[NodeId], rank: &[u32], out: &mut Vec<NodeId>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (ra, rb) = (rank[a[i] as usize], rank[b[j] as usize]);
        match ra.cmp(&rb) {
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Greater => i += 1,
            std::cmp::Ordering::Less => j += 1,
        }
    }
}
