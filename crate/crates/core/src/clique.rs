//! k-clique listing over an oriented graph, node scores, and the single-root
//! searches the solvers are built on.
//!
//! Every search starts at a root `u`, takes its valid out-neighbours as the
//! candidate set, and recursively narrows candidates to the common
//! out-neighbourhood of the chosen nodes. Children are visited in out-list
//! order (descending rank), which is the only source of scan order.

use rayon::prelude::*;

use crate::graph::{Graph, NodeId};
use crate::ordering::NodeOrdering;
use crate::oriented::{intersect_desc, orient, OrientedGraph};

/// A set of exactly k pairwise-adjacent nodes, stored in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clique(Box<[NodeId]>);

impl Clique {
    /// Sorts `members`. Panics on repeated nodes.
    pub fn new(mut members: Vec<NodeId>) -> Self {
        members.sort_unstable();
        assert!(
            members.windows(2).all(|w| w[0] < w[1]),
            "clique members must be distinct: {members:?}"
        );
        Clique(members.into_boxed_slice())
    }

    pub fn members(&self) -> &[NodeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, u: NodeId) -> bool {
        self.0.binary_search(&u).is_ok()
    }

    pub fn is_disjoint(&self, other: &Clique) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Equal => return false,
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
            }
        }
        true
    }

    /// Whether every pair of members is adjacent in `g`.
    pub fn is_clique_in(&self, g: &Graph) -> bool {
        self.0.iter().enumerate().all(|(i, &u)| {
            (u as usize) < g.n() && self.0[i + 1..].iter().all(|&v| g.has_edge(u, v))
        })
    }
}

impl From<Vec<NodeId>> for Clique {
    fn from(members: Vec<NodeId>) -> Self {
        Clique::new(members)
    }
}

/// Sum of member node scores.
pub type CliqueScore = u64;

/// How equal-score cliques are ranked against each other.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TieBreak {
    /// Lexicographically smaller member array wins: a fixed total order on cliques.
    #[default]
    Canonical,
    /// The first clique met in scan order wins.
    FirstFound,
}

/// Per-node k-clique counts and the total clique count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeScoreTable {
    scores: Vec<u64>,
    tau: u64,
    k: usize,
}

impl NodeScoreTable {
    pub fn scores(&self) -> &[u64] {
        &self.scores
    }

    #[inline]
    pub fn score(&self, u: NodeId) -> u64 {
        self.scores[u as usize]
    }

    /// Total number of k-cliques.
    pub fn tau(&self) -> u64 {
        self.tau
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

fn check_k(k: usize) {
    assert!(k >= 3, "clique size k must be at least 3, got {k}");
}

/// Per-level candidate buffers for one search.
struct Scratch {
    root: Vec<NodeId>,
    levels: Vec<Vec<NodeId>>,
    path: Vec<NodeId>,
}

impl Scratch {
    fn new(k: usize) -> Self {
        Scratch {
            root: Vec::new(),
            levels: vec![Vec::new(); k],
            path: Vec::with_capacity(k),
        }
    }

    /// Loads the valid out-neighbours of `u` as root candidates.
    fn load_root(&mut self, og: &OrientedGraph, u: NodeId) {
        self.root.clear();
        self.root.extend(og.out_neighbors(u));
        self.path.clear();
        self.path.push(u);
    }
}

fn list_rec(
    og: &OrientedGraph,
    need: usize,
    cand: &[NodeId],
    path: &mut Vec<NodeId>,
    bufs: &mut [Vec<NodeId>],
    visit: &mut dyn FnMut(&[NodeId]),
) {
    if need == 1 {
        for &x in cand {
            path.push(x);
            visit(path);
            path.pop();
        }
        return;
    }
    let (next, rest) = bufs.split_first_mut().unwrap();
    for &x in cand {
        intersect_desc(cand, og.raw_out(x), og.ordering().ranks(), next);
        if next.len() >= need - 1 {
            path.push(x);
            list_rec(og, need - 1, next, path, rest, visit);
            path.pop();
        }
    }
}

/// Calls `visitor` once per k-clique among valid nodes, members ascending.
///
/// Cliques are streamed; nothing outlives the callback.
pub fn for_each_clique(og: &OrientedGraph, k: usize, mut visitor: impl FnMut(&[NodeId])) {
    check_k(k);
    let mut s = Scratch::new(k);
    let mut sorted = Vec::with_capacity(k);
    let mut visit = |path: &[NodeId]| {
        sorted.clear();
        sorted.extend_from_slice(path);
        sorted.sort_unstable();
        visitor(&sorted);
    };
    for u in 0..og.n() as NodeId {
        if !og.is_valid(u) || og.out_degree(u) < k - 1 {
            continue;
        }
        s.load_root(og, u);
        let Scratch { root, levels, path } = &mut s;
        list_rec(og, k - 1, root, path, levels, &mut visit);
    }
}

/// All k-cliques of `g`, in canonical (lexicographic) order.
pub fn list_cliques(g: &Graph, k: usize) -> Vec<Clique> {
    let og = orient(g, &NodeOrdering::by_degree(g));
    let mut out = Vec::new();
    for_each_clique(&og, k, |c| out.push(Clique(c.into())));
    out.sort_unstable();
    out
}

fn count_rec(
    og: &OrientedGraph,
    need: usize,
    cand: &[NodeId],
    bufs: &mut [Vec<NodeId>],
    scores: &mut [u64],
) -> u64 {
    if need == 1 {
        for &x in cand {
            scores[x as usize] += 1;
        }
        return cand.len() as u64;
    }
    let (next, rest) = bufs.split_first_mut().unwrap();
    let mut total = 0;
    for &x in cand {
        intersect_desc(cand, og.raw_out(x), og.ordering().ranks(), next);
        if next.len() >= need - 1 {
            let c = count_rec(og, need - 1, next, rest, scores);
            scores[x as usize] += c;
            total += c;
        }
    }
    total
}

struct ScoreAcc {
    scores: Vec<u64>,
    tau: u64,
}

/// Counts, for every node, the k-cliques containing it, without storing any clique.
///
/// Roots are processed in parallel on the current rayon pool; per-worker
/// tables are summed at the end.
pub fn compute_node_scores(og: &OrientedGraph, k: usize) -> NodeScoreTable {
    check_k(k);
    let n = og.n();
    let min_len = (n / (4 * rayon::current_num_threads().max(1))).max(256);
    let acc = (0..n as NodeId)
        .into_par_iter()
        .with_min_len(min_len)
        .fold(
            || {
                (
                    ScoreAcc {
                        scores: vec![0; n],
                        tau: 0,
                    },
                    Scratch::new(k),
                )
            },
            |(mut acc, mut s), u| {
                if og.is_valid(u) && og.out_degree(u) >= k - 1 {
                    s.load_root(og, u);
                    let c = count_rec(og, k - 1, &s.root, &mut s.levels, &mut acc.scores);
                    acc.scores[u as usize] += c;
                    acc.tau += c;
                }
                (acc, s)
            },
        )
        .map(|(acc, _)| acc)
        .reduce(
            || ScoreAcc {
                scores: vec![0; n],
                tau: 0,
            },
            |mut a, b| {
                for (x, y) in a.scores.iter_mut().zip(&b.scores) {
                    *x += y;
                }
                a.tau += b.tau;
                a
            },
        );
    NodeScoreTable {
        scores: acc.scores,
        tau: acc.tau,
        k,
    }
}

/// Node scores of `g`, oriented by degree for the count.
pub fn node_scores_of(g: &Graph, k: usize) -> NodeScoreTable {
    compute_node_scores(&orient(g, &NodeOrdering::by_degree(g)), k)
}

/// Sum of the members' node scores.
pub fn clique_score(members: &[NodeId], table: &NodeScoreTable) -> CliqueScore {
    members.iter().map(|&u| table.score(u)).sum()
}

fn one_rec(
    og: &OrientedGraph,
    need: usize,
    cand: &[NodeId],
    path: &mut Vec<NodeId>,
    bufs: &mut [Vec<NodeId>],
) -> bool {
    if need == 1 {
        return match cand.first() {
            Some(&x) => {
                path.push(x);
                true
            }
            None => false,
        };
    }
    let (next, rest) = bufs.split_first_mut().unwrap();
    for &x in cand {
        intersect_desc(cand, og.raw_out(x), og.ordering().ranks(), next);
        if next.len() >= need - 1 {
            path.push(x);
            if one_rec(og, need - 1, next, path, rest) {
                return true;
            }
            path.pop();
        }
    }
    false
}

/// The first k-clique found with `u` as its highest-ranked member, if any.
pub fn find_one(og: &OrientedGraph, k: usize, u: NodeId) -> Option<Clique> {
    check_k(k);
    if !og.is_valid(u) || og.out_degree(u) < k - 1 {
        return None;
    }
    let mut s = Scratch::new(k);
    s.load_root(og, u);
    let Scratch { root, levels, path } = &mut s;
    one_rec(og, k - 1, root, path, levels).then(|| Clique::new(path.clone()))
}

struct MinSearch<'a> {
    og: &'a OrientedGraph,
    scores: &'a [u64],
    pruning: bool,
    ties: TieBreak,
    best_score: CliqueScore,
    best: Vec<NodeId>,
    sorted: Vec<NodeId>,
}

impl MinSearch<'_> {
    fn consider(&mut self, path: &[NodeId], score: CliqueScore) {
        if score > self.best_score {
            return;
        }
        self.sorted.clear();
        self.sorted.extend_from_slice(path);
        self.sorted.sort_unstable();
        let better = score < self.best_score
            || (self.ties == TieBreak::Canonical && self.sorted < self.best);
        if better {
            self.best_score = score;
            std::mem::swap(&mut self.best, &mut self.sorted);
        }
    }

    fn run(
        &mut self,
        need: usize,
        cand: &[NodeId],
        path: &mut Vec<NodeId>,
        s_cur: CliqueScore,
        bufs: &mut [Vec<NodeId>],
    ) {
        if need == 1 {
            for &x in cand {
                path.push(x);
                self.consider(path, s_cur + self.scores[x as usize]);
                path.pop();
            }
            return;
        }
        let (next, rest) = bufs.split_first_mut().unwrap();
        for &x in cand {
            let s_next = s_cur + self.scores[x as usize];
            // Every node still to be added lies in a clique, so scores >= 1:
            // nothing below this branch can tie the incumbent.
            if self.pruning && s_next >= self.best_score {
                continue;
            }
            intersect_desc(cand, self.og.raw_out(x), self.og.ordering().ranks(), next);
            if next.len() >= need - 1 {
                path.push(x);
                self.run(need - 1, next, path, s_next, rest);
                path.pop();
            }
        }
    }
}

/// The minimum-score k-clique rooted at `u`: `u` plus lower-ranked out-neighbors.
///
/// `table` must hold the node scores of the graph `og` was built from (or a
/// supergraph of its residual). With `pruning`, branches whose partial score
/// already reaches the incumbent are skipped; the answer is the same either way.
pub fn find_min(
    og: &OrientedGraph,
    k: usize,
    u: NodeId,
    table: &NodeScoreTable,
    pruning: bool,
    ties: TieBreak,
) -> Option<(Clique, CliqueScore)> {
    check_k(k);
    if !og.is_valid(u) || og.out_degree(u) < k - 1 {
        return None;
    }
    let mut s = Scratch::new(k);
    s.load_root(og, u);
    let mut search = MinSearch {
        og,
        scores: table.scores(),
        pruning,
        ties,
        best_score: CliqueScore::MAX,
        best: Vec::new(),
        sorted: Vec::with_capacity(k),
    };
    let Scratch { root, levels, path } = &mut s;
    search.run(k - 1, root, path, table.score(u), levels);
    (search.best_score != CliqueScore::MAX)
        .then(|| (Clique(search.best.into_boxed_slice()), search.best_score))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::generate::erdos_renyi;
    use crate::testutil::brute_cliques;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn by_labels(g: &Graph, labels: &[u64]) -> Vec<NodeId> {
        let mut v: Vec<NodeId> = labels
            .iter()
            .map(|&l| g.node_of_label(l).unwrap())
            .collect();
        v.sort_unstable();
        v
    }

    fn label_set(g: &Graph, c: &Clique) -> Vec<u64> {
        c.members().iter().map(|&u| g.label(u)).collect()
    }

    #[test]
    fn triangle_chain_has_the_seven_listed_triangles() {
        let g = fixtures::triangle_chain();
        let og = orient(&g, &NodeOrdering::natural(g.n()));
        let mut seen = Vec::new();
        for_each_clique(&og, 3, |c| seen.push(c.to_vec()));
        seen.sort();
        let mut expected: Vec<Vec<NodeId>> = [
            [1, 3, 6],
            [3, 5, 6],
            [5, 6, 8],
            [5, 7, 8],
            [7, 8, 9],
            [4, 7, 9],
            [2, 4, 9],
        ]
        .iter()
        .map(|t| by_labels(&g, t))
        .collect();
        expected.sort();
        assert_eq!(seen, expected);
    }

    #[test]
    fn complete_graph_counts() {
        let g = fixtures::complete(5);
        let og = orient(&g, &NodeOrdering::natural(5));
        let mut count = 0;
        for_each_clique(&og, 3, |_| count += 1);
        assert_eq!(count, 10);
        let t = compute_node_scores(
            &orient(&fixtures::complete(4), &NodeOrdering::natural(4)),
            3,
        );
        assert_eq!(t.scores(), &[3, 3, 3, 3]);
        assert_eq!(t.tau(), 4);
    }

    #[test]
    fn triangle_chain_scores() {
        let g = fixtures::triangle_chain();
        let t = node_scores_of(&g, 3);
        assert_eq!(t.scores(), &[1, 1, 2, 2, 3, 3, 3, 3, 3]);
        assert_eq!(t.tau(), 7);
        let c3 = by_labels(&g, &[5, 6, 8]);
        assert_eq!(clique_score(&c3, &t), 9);
        let c1 = by_labels(&g, &[1, 3, 6]);
        assert_eq!(clique_score(&c1, &t), 6);
    }

    #[test]
    fn isolated_node_scores_zero() {
        let mut edges: Vec<(NodeId, NodeId)> = vec![(0, 1), (1, 2), (0, 2)];
        edges.push((2, 3));
        let g = Graph::from_edges(5, edges);
        let t = node_scores_of(&g, 3);
        assert_eq!(t.scores(), &[1, 1, 1, 0, 0]);
        let tri = Clique::new(vec![0, 1, 2]);
        assert_eq!(clique_score(tri.members(), &t), 3);
    }

    #[test]
    fn find_one_walks_the_triangle_chain() {
        let g = fixtures::triangle_chain();
        let mut og = orient(&g, &NodeOrdering::natural(g.n()));
        let v6 = g.node_of_label(6).unwrap();
        let c1 = find_one(&og, 3, v6).unwrap();
        assert_eq!(label_set(&g, &c1), [3, 5, 6]);
        for &u in c1.members() {
            og.remove_node(u);
        }
        let v9 = g.node_of_label(9).unwrap();
        let c2 = find_one(&og, 3, v9).unwrap();
        assert_eq!(label_set(&g, &c2), [7, 8, 9]);
        let v3 = g.node_of_label(3).unwrap();
        assert_eq!(find_one(&og, 3, v3), None);
        let v2 = g.node_of_label(2).unwrap();
        assert_eq!(find_one(&og, 3, v2), None);
    }

    #[test]
    fn find_min_under_score_ordering() {
        let g = fixtures::triangle_chain();
        let t = node_scores_of(&g, 3);
        let og = orient(&g, &NodeOrdering::by_score(t.scores()));
        // (1,3,6): highest-ranked member is 6.
        let v6 = g.node_of_label(6).unwrap();
        let cliques_with_v6: Vec<Clique> = list_cliques(&g, 3)
            .into_iter()
            .filter(|c| c.contains(v6) && c.members().iter().all(|&x| og.rank(x) <= og.rank(v6)))
            .collect();
        let oracle = cliques_with_v6
            .iter()
            .map(|c| clique_score(c.members(), &t))
            .min()
            .unwrap();
        assert_eq!(oracle, 6);
        let (c, score) = find_min(&og, 3, v6, &t, true, TieBreak::Canonical).unwrap();
        assert_eq!(score, 6);
        assert_eq!(label_set(&g, &c), [1, 3, 6]);
        let v1 = g.node_of_label(1).unwrap();
        assert_eq!(find_min(&og, 3, v1, &t, true, TieBreak::Canonical), None);
    }

    #[test]
    fn listing_matches_brute_force_under_every_ordering() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.random_range(4..=16);
            let p = rng.random_range(0.2..0.8);
            let g = erdos_renyi(n, p, &mut rng);
            for k in 3..=5 {
                let expected = brute_cliques(&g, k);
                let mut taus = Vec::new();
                for ordering in [
                    NodeOrdering::natural(n),
                    NodeOrdering::by_degree(&g),
                    NodeOrdering::by_score(node_scores_of(&g, 3).scores()),
                ] {
                    let og = orient(&g, &ordering);
                    let mut seen = Vec::new();
                    for_each_clique(&og, k, |c| seen.push(Clique::new(c.to_vec())));
                    seen.sort();
                    assert_eq!(seen, expected);
                    let t = compute_node_scores(&og, k);
                    assert_eq!(t.scores().iter().sum::<u64>(), k as u64 * t.tau());
                    taus.push(t.clone());
                }
                assert!(taus.windows(2).all(|w| w[0] == w[1]));
            }
        }
    }

    #[test]
    #[should_panic(expected = "at least 3")]
    fn k_below_three_is_rejected() {
        let g = fixtures::complete(3);
        let og = orient(&g, &NodeOrdering::natural(3));
        for_each_clique(&og, 2, |_| {});
    }

    #[test]
    fn clique_helpers() {
        let a = Clique::new(vec![5, 1, 3]);
        assert_eq!(a.members(), &[1, 3, 5]);
        assert!(a.contains(3));
        assert!(!a.is_disjoint(&Clique::new(vec![0, 5])));
        assert!(a.is_disjoint(&Clique::new(vec![0, 2, 4])));
        assert!(
            fixtures::complete(4).n() == 4
                && Clique::new(vec![0, 1, 2]).is_clique_in(&fixtures::complete(4))
        );
    }
}
