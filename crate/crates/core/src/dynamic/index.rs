use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::clique::Clique;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::solution::{free_clique, SlotId, SolutionSet};

/// Candidate cliques grouped by the solution clique they would replace.
///
/// A candidate is a k-clique with at least one free node whose non-free nodes
/// all sit in one solution clique, its anchor.
#[derive(Clone, Debug, Default)]
pub struct CandidateIndex {
    by_anchor: HashMap<SlotId, BTreeSet<Clique>>,
    anchor_of: HashMap<Clique, SlotId>,
    by_node: HashMap<NodeId, HashSet<Clique>>,
}

/// Anchor and candidate cliques, keyed by the anchor's members.
pub type IndexSnapshot = BTreeMap<Clique, BTreeSet<Clique>>;

impl CandidateIndex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Total number of candidates.
    pub fn len(&self) -> usize {
        self.anchor_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.anchor_of.is_empty()
    }

    /// Candidates anchored at `slot`, in canonical order.
    pub fn candidates(&self, slot: SlotId) -> Vec<Clique> {
        self.by_anchor
            .get(&slot)
            .map(|set| set.iter().cloned().collect())
            .unwrap_or_default()
    }

    pub fn anchor_of(&self, c: &Clique) -> Option<SlotId> {
        self.anchor_of.get(c).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Clique, SlotId)> {
        self.anchor_of.iter().map(|(c, &slot)| (c, slot))
    }

    /// Candidates that contain node `u`.
    pub fn containing(&self, u: NodeId) -> Vec<Clique> {
        let mut out: Vec<Clique> = self
            .by_node
            .get(&u)
            .map(|set| set.iter().cloned().collect())
            .unwrap_or_default();
        out.sort_unstable();
        out
    }

    /// Returns false if `c` was already indexed.
    pub fn insert(&mut self, c: Clique, anchor: SlotId) -> bool {
        if self.anchor_of.contains_key(&c) {
            return false;
        }
        for &u in c.members() {
            self.by_node.entry(u).or_default().insert(c.clone());
        }
        self.by_anchor.entry(anchor).or_default().insert(c.clone());
        self.anchor_of.insert(c, anchor);
        true
    }

    pub fn remove(&mut self, c: &Clique) -> Option<SlotId> {
        let anchor = self.anchor_of.remove(c)?;
        for &u in c.members() {
            if let Some(set) = self.by_node.get_mut(&u) {
                set.remove(c);
                if set.is_empty() {
                    self.by_node.remove(&u);
                }
            }
        }
        if let Some(set) = self.by_anchor.get_mut(&anchor) {
            set.remove(c);
            if set.is_empty() {
                self.by_anchor.remove(&anchor);
            }
        }
        Some(anchor)
    }

    pub fn snapshot(&self, s: &SolutionSet) -> IndexSnapshot {
        self.by_anchor
            .iter()
            .map(|(&slot, set)| {
                let anchor = s
                    .get(slot)
                    .cloned()
                    .unwrap_or_else(|| Clique::new(Vec::new()));
                (anchor, set.clone())
            })
            .collect()
    }
}

/// The anchor `members` would have as a candidate, if it qualifies.
pub(crate) fn classify(s: &SolutionSet, members: &[NodeId]) -> Option<SlotId> {
    let mut anchor = None;
    let mut has_free = false;
    for &u in members {
        match s.slot_of(u) {
            None => has_free = true,
            Some(slot) => match anchor {
                None => anchor = Some(slot),
                Some(a) if a != slot => return None,
                Some(_) => {}
            },
        }
    }
    anchor.filter(|_| has_free)
}

fn extend(
    g: &Graph,
    need: usize,
    cur: &mut Vec<NodeId>,
    pool: &[NodeId],
    visit: &mut dyn FnMut(&[NodeId]),
) {
    if need == 0 {
        let mut members = cur.clone();
        members.sort_unstable();
        visit(&members);
        return;
    }
    for (i, &v) in pool.iter().enumerate() {
        if pool.len() - i < need {
            break;
        }
        let next: Vec<NodeId> = pool[i + 1..]
            .iter()
            .copied()
            .filter(|&w| g.has_edge(v, w))
            .collect();
        if next.len() + 1 < need {
            continue;
        }
        cur.push(v);
        extend(g, need - 1, cur, &next, visit);
        cur.pop();
    }
}

/// Every k-clique containing all of `must`, which must itself be a clique.
pub(crate) fn cliques_through(
    g: &Graph,
    k: usize,
    must: &[NodeId],
    mut visit: impl FnMut(&[NodeId]),
) {
    if must.len() > k {
        return;
    }
    let Some((&first, rest)) = must.split_first() else {
        let all: Vec<NodeId> = g.nodes().collect();
        extend(g, k, &mut Vec::new(), &all, &mut visit);
        return;
    };
    let pool: Vec<NodeId> = g
        .neighbors(first)
        .iter()
        .copied()
        .filter(|&w| rest.iter().all(|&m| m != w && g.has_edge(m, w)))
        .collect();
    extend(g, k - must.len(), &mut must.to_vec(), &pool, &mut visit);
}

/// Every k-clique of the subgraph induced by `nodes` (sorted ascending).
pub(crate) fn cliques_within(
    g: &Graph,
    k: usize,
    nodes: &[NodeId],
    mut visit: impl FnMut(&[NodeId]),
) {
    extend(g, k, &mut Vec::new(), nodes, &mut visit);
}

/// Builds the index from scratch: for each solution clique `C`, enumerate the
/// k-cliques on `C` plus its free neighbors.
///
/// Fails with [`Error::NotMaximal`] if some k-clique is made of free nodes only.
pub fn build_candidate_index(g: &Graph, k: usize, s: &SolutionSet) -> Result<CandidateIndex> {
    if let Some(c) = free_clique(g, k, s) {
        return Err(Error::NotMaximal(c.members().to_vec()));
    }
    let mut index = CandidateIndex::new();
    for (slot, c) in s.iter() {
        let mut region: BTreeSet<NodeId> = c.members().iter().copied().collect();
        for &u in c.members() {
            region.extend(g.neighbors(u).iter().copied().filter(|&w| s.is_free(w)));
        }
        let region: Vec<NodeId> = region.into_iter().collect();
        cliques_within(g, k, &region, |members| {
            if members.iter().any(|&w| s.is_free(w)) {
                index.insert(Clique::new(members.to_vec()), slot);
            }
        });
    }
    Ok(index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::generate::erdos_renyi;
    use crate::solvers::{solve_lp, LpOptions};
    use crate::testutil::brute_cliques;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn clique(g: &Graph, labels: &[u64]) -> Clique {
        Clique::new(
            labels
                .iter()
                .map(|&l| g.node_of_label(l).unwrap())
                .collect(),
        )
    }

    #[test]
    fn dangling_path_candidates() {
        let g = fixtures::dangling_path();
        let s =
            SolutionSet::from_cliques(g.n(), [clique(&g, &[3, 4, 5]), clique(&g, &[9, 10, 11])])
                .unwrap();
        let index = build_candidate_index(&g, 3, &s).unwrap();
        assert_eq!(index.candidates(0), vec![clique(&g, &[1, 2, 3])]);
        assert!(index.candidates(1).is_empty());
        assert_eq!(index.len(), 1);
    }

    #[test]
    fn full_cover_has_no_candidates() {
        let g = fixtures::complete(6);
        let s =
            SolutionSet::from_cliques(6, [Clique::new(vec![0, 1, 2]), Clique::new(vec![3, 4, 5])])
                .unwrap();
        assert!(build_candidate_index(&g, 3, &s).unwrap().is_empty());
    }

    #[test]
    fn non_maximal_rejected() {
        let g = fixtures::complete(6);
        let s = SolutionSet::from_cliques(6, [Clique::new(vec![0, 1, 2])]).unwrap();
        assert!(matches!(
            build_candidate_index(&g, 3, &s),
            Err(Error::NotMaximal(_))
        ));
    }

    #[test]
    fn matches_filtered_clique_list() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..40 {
            let g = erdos_renyi(20, 0.35, &mut rng);
            for k in [3, 4] {
                let s = solve_lp(&g, k, &LpOptions::default());
                let index = build_candidate_index(&g, k, &s).unwrap();
                let mut expected = IndexSnapshot::new();
                for c in brute_cliques(&g, k) {
                    let anchors: BTreeSet<SlotId> =
                        c.members().iter().filter_map(|&u| s.slot_of(u)).collect();
                    let free = c.members().iter().any(|&u| s.is_free(u));
                    if free && anchors.len() == 1 {
                        let anchor = s.get(*anchors.first().unwrap()).unwrap().clone();
                        expected.entry(anchor).or_default().insert(c);
                    }
                }
                assert_eq!(index.snapshot(&s), expected);
            }
        }
    }

    #[test]
    fn cliques_through_edge() {
        let g = fixtures::complete(5);
        let mut found = Vec::new();
        cliques_through(&g, 4, &[1, 3], |c| found.push(c.to_vec()));
        found.sort();
        assert_eq!(
            found,
            [vec![0, 1, 2, 3], vec![0, 1, 3, 4], vec![1, 2, 3, 4]]
        );
    }
}
