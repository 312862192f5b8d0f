//! Total node orderings used to orient a graph.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderingKind {
    /// Larger degree, larger rank.
    Degree,
    /// Larger node score (k-clique count), larger rank.
    NodeScore,
    /// Rank equals node id.
    Natural,
}

/// A bijection from nodes to ranks in `[0, n)`.
///
/// Keyed orderings sort by `(key, id)`, so ties always go to the smaller id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeOrdering {
    rank: Vec<u32>,
    order: Vec<NodeId>,
    kind: OrderingKind,
}

impl NodeOrdering {
    pub fn natural(n: usize) -> Self {
        let order: Vec<NodeId> = (0..n as NodeId).collect();
        NodeOrdering {
            rank: order.clone(),
            order,
            kind: OrderingKind::Natural,
        }
    }

    pub fn by_degree(g: &Graph) -> Self {
        Self::by_key(OrderingKind::Degree, g.n(), |u| g.degree(u) as u64)
    }

    pub fn by_score(scores: &[u64]) -> Self {
        Self::by_key(OrderingKind::NodeScore, scores.len(), |u| {
            scores[u as usize]
        })
    }

    fn by_key(kind: OrderingKind, n: usize, key: impl Fn(NodeId) -> u64) -> Self {
        let mut order: Vec<NodeId> = (0..n as NodeId).collect();
        order.sort_by_key(|&u| (key(u), u));
        let mut rank = vec![0; n];
        for (r, &u) in order.iter().enumerate() {
            rank[u as usize] = r as u32;
        }
        NodeOrdering { rank, order, kind }
    }

    pub fn kind(&self) -> OrderingKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `eta(u)`.
    #[inline]
    pub fn rank(&self, u: NodeId) -> u32 {
        self.rank[u as usize]
    }

    pub fn ranks(&self) -> &[u32] {
        &self.rank
    }

    /// Nodes in ascending rank.
    pub fn ascending(&self) -> &[NodeId] {
        &self.order
    }
}

/// Builds an ordering of `kind` over `g`; the node-score kind needs `scores`.
pub fn build_ordering(
    g: &Graph,
    kind: OrderingKind,
    scores: Option<&[u64]>,
) -> Result<NodeOrdering> {
    match kind {
        OrderingKind::Natural => Ok(NodeOrdering::natural(g.n())),
        OrderingKind::Degree => Ok(NodeOrdering::by_degree(g)),
        OrderingKind::NodeScore => {
            let scores = scores.ok_or(Error::MissingScores)?;
            if scores.len() != g.n() {
                return Err(Error::ScoreTableLength {
                    expected: g.n(),
                    got: scores.len(),
                });
            }
            Ok(NodeOrdering::by_score(scores))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn is_permutation(o: &NodeOrdering) -> bool {
        let mut seen = vec![false; o.len()];
        for &r in o.ranks() {
            if std::mem::replace(&mut seen[r as usize], true) {
                return false;
            }
        }
        o.ascending()
            .iter()
            .all(|&u| o.ascending()[o.rank(u) as usize] == u)
    }

    #[test]
    fn natural_on_triangle_chain_is_identity() {
        let g = fixtures::triangle_chain();
        let o = build_ordering(&g, OrderingKind::Natural, None).unwrap();
        for i in 1..=9u64 {
            assert_eq!(o.rank(g.node_of_label(i).unwrap()), (i - 1) as u32);
        }
    }

    #[test]
    fn equal_degrees_break_ties_by_id() {
        let g = fixtures::complete(6);
        let o = NodeOrdering::by_degree(&g);
        assert_eq!(o.ascending(), &[0, 1, 2, 3, 4, 5]);
        assert!(is_permutation(&o));
    }

    #[test]
    fn degree_ordering_puts_hubs_last() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]);
        let o = NodeOrdering::by_degree(&g);
        assert_eq!(o.rank(0), 3);
        assert!(is_permutation(&o));
    }

    #[test]
    fn score_ordering_on_triangle_chain() {
        // Triangle memberships counted by hand from the fixture's clique list.
        let scores = [1, 1, 2, 2, 3, 3, 3, 3, 3];
        let g = fixtures::triangle_chain();
        let o = build_ordering(&g, OrderingKind::NodeScore, Some(&scores)).unwrap();
        let labels: Vec<u64> = o.ascending().iter().map(|&u| g.label(u)).collect();
        assert_eq!(labels, [1, 2, 3, 4, 5, 6, 7, 8, 9]);
        for w in o.ascending().windows(2) {
            assert!(scores[w[0] as usize] <= scores[w[1] as usize]);
        }
    }

    #[test]
    fn score_ordering_needs_scores() {
        let g = fixtures::triangle_chain();
        assert!(matches!(
            build_ordering(&g, OrderingKind::NodeScore, None),
            Err(Error::MissingScores)
        ));
        assert!(matches!(
            build_ordering(&g, OrderingKind::NodeScore, Some(&[1, 2])),
            Err(Error::ScoreTableLength { .. })
        ));
    }
}
