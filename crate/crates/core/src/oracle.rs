//! Clique graph construction and exact maximum disjoint sets for small instances.

use std::rc::Rc;
use std::time::{Duration, Instant};

use crate::clique::{list_cliques, node_scores_of, Clique, TieBreak};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::solution::SolutionSet;
use crate::solvers::greedy_by_score;

pub const DEFAULT_CLIQUE_CAP: u64 = 200_000;
pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(60);

/// Largest connected component of the clique graph the exact search accepts.
pub const MAX_COMPONENT: usize = 1 << 15;

/// Every k-clique as a node, with an edge between any two that share a node.
#[derive(Clone, Debug)]
pub struct CliqueGraph {
    k: usize,
    node_count: usize,
    cliques: Vec<Clique>,
    adj: Vec<Vec<u32>>,
    membership: Vec<Vec<u32>>,
}

impl CliqueGraph {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Node count of the host graph.
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Number of cliques, `tau`.
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn cliques(&self) -> &[Clique] {
        &self.cliques
    }

    pub fn clique(&self, i: usize) -> &Clique {
        &self.cliques[i]
    }

    /// Sorted indices of the cliques overlapping clique `i`.
    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.adj[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&(j as u32)).is_ok()
    }

    /// Indices of the cliques containing host node `u`.
    pub fn cliques_of(&self, u: NodeId) -> &[u32] {
        &self.membership[u as usize]
    }
}

/// Builds the clique graph, refusing when there are more than `cap` cliques.
pub fn build_clique_graph(g: &Graph, k: usize, cap: u64) -> Result<CliqueGraph> {
    let tau = node_scores_of(g, k).tau();
    if tau > cap {
        return Err(Error::Capacity { tau, cap });
    }
    let cliques = list_cliques(g, k);
    let mut membership = vec![Vec::new(); g.n()];
    for (i, c) in cliques.iter().enumerate() {
        for &u in c.members() {
            membership[u as usize].push(i as u32);
        }
    }
    let mut adj = vec![Vec::new(); cliques.len()];
    for group in &membership {
        for (a, &i) in group.iter().enumerate() {
            for &j in &group[a + 1..] {
                adj[i as usize].push(j);
                adj[j as usize].push(i);
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    Ok(CliqueGraph {
        k,
        node_count: g.n(),
        cliques,
        adj,
        membership,
    })
}

/// How many other cliques overlap clique `i`.
pub fn clique_degree(cg: &CliqueGraph, i: usize) -> usize {
    cg.adj[i].len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn full(len: usize) -> Self {
        let mut b = Self::empty(len);
        for i in 0..len {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        (self.0[i / 64] >> (i % 64)) & 1 == 1
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn count_and(&self, other: &Bits) -> u32 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    fn and_not(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + bit)
            })
        })
    }
}

/// Persistent list of chosen vertices shared between search states.
struct Chosen {
    v: usize,
    next: Option<Rc<Chosen>>,
}

fn collect(mut list: &Option<Rc<Chosen>>) -> Vec<usize> {
    let mut out = Vec::new();
    while let Some(node) = list {
        out.push(node.v);
        list = &node.next;
    }
    out
}

struct State {
    alive: Bits,
    size: usize,
    chosen: Option<Rc<Chosen>>,
}

/// Branch and bound over one connected component, with local indices.
struct Component {
    /// Closed neighborhoods, so taking `v` removes `closed[v]`.
    closed: Vec<Bits>,
    /// Per host node, the local cliques containing it.
    groups: Vec<Bits>,
    /// Per local clique, indices into `groups` of its members.
    members: Vec<Vec<usize>>,
    deadline: Option<Instant>,
    steps: u64,
    best: usize,
    best_set: Vec<usize>,
}

struct OutOfTime;

impl Component {
    fn out_of_time(&mut self) -> bool {
        self.steps += 1;
        self.steps.is_multiple_of(256) && self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn degree(&self, v: usize, alive: &Bits) -> u32 {
        // closed[v] includes v itself.
        self.closed[v].count_and(alive) - 1
    }

    fn take(st: &mut State, v: usize, closed: &Bits) {
        st.alive.and_not(closed);
        st.size += 1;
        st.chosen = Some(Rc::new(Chosen {
            v,
            next: st.chosen.take(),
        }));
    }

    /// Takes isolated and pendant vertices, which never hurts optimality.
    fn reduce(&self, st: &mut State) {
        loop {
            let mut changed = false;
            let alive: Vec<usize> = st.alive.iter().collect();
            for v in alive {
                if st.alive.contains(v) && self.degree(v, &st.alive) <= 1 {
                    Self::take(st, v, &self.closed[v]);
                    changed = true;
                }
            }
            if !changed {
                return;
            }
        }
    }

    /// Cover the alive cliques by host-node groups; each group holds at most
    /// one chosen clique. Also bounded by alive host nodes over `k`.
    fn upper_bound(&self, alive: &Bits, k: usize) -> usize {
        let mut rest = alive.clone();
        let mut groups = 0;
        while let Some(i) = rest.first() {
            let g = self.members[i]
                .iter()
                .copied()
                .max_by_key(|&m| (self.groups[m].count_and(&rest), std::cmp::Reverse(m)))
                .unwrap();
            rest.and_not(&self.groups[g]);
            groups += 1;
        }
        let mut touched = vec![false; self.groups.len()];
        for i in alive.iter() {
            for &m in &self.members[i] {
                touched[m] = true;
            }
        }
        let nodes = touched.iter().filter(|&&t| t).count();
        groups.min(nodes / k)
    }

    fn search(&mut self, len: usize, k: usize) -> std::result::Result<(), OutOfTime> {
        let mut stack = vec![State {
            alive: Bits::full(len),
            size: 0,
            chosen: None,
        }];
        while let Some(mut st) = stack.pop() {
            if self.out_of_time() {
                return Err(OutOfTime);
            }
            self.reduce(&mut st);
            if st.alive.is_empty() {
                if st.size > self.best {
                    self.best = st.size;
                    self.best_set = collect(&st.chosen);
                }
                continue;
            }
            if st.size + self.upper_bound(&st.alive, k) <= self.best {
                continue;
            }
            let v = st
                .alive
                .iter()
                .max_by_key(|&v| (self.degree(v, &st.alive), std::cmp::Reverse(v)))
                .unwrap();
            let mut without = State {
                alive: st.alive.clone(),
                size: st.size,
                chosen: st.chosen.clone(),
            };
            without.alive.clear(v);
            stack.push(without);
            Self::take(&mut st, v, &self.closed[v]);
            stack.push(st);
        }
        Ok(())
    }
}

/// Connected components of the clique graph, each sorted ascending.
fn components(cg: &CliqueGraph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; cg.len()];
    let mut out = Vec::new();
    for start in 0..cg.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut i = 0;
        while i < comp.len() {
            for &j in cg.neighbors(comp[i]) {
                if !seen[j as usize] {
                    seen[j as usize] = true;
                    comp.push(j as usize);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Maximum independent set of the clique graph, returned as a disjoint set of
/// cliques of maximum cardinality.
///
/// `budget` of `None` searches without a time limit. On timeout the error
/// carries the best set found so far, which is at least the greedy seed.
pub fn exact_mis(cg: &CliqueGraph, budget: Option<Duration>) -> Result<SolutionSet> {
    let deadline = budget.map(|b| Instant::now() + b);
    let seed = greedy_by_score(
        cg.cliques(),
        |u| cg.cliques_of(u).len() as u64,
        TieBreak::Canonical,
    );
    let mut in_seed = vec![false; cg.len()];
    for &i in &seed {
        in_seed[i] = true;
    }

    let comps = components(cg);
    if let Some(big) = comps.iter().find(|c| c.len() > MAX_COMPONENT) {
        return Err(Error::Capacity {
            tau: big.len() as u64,
            cap: MAX_COMPONENT as u64,
        });
    }
    let mut picked: Vec<Vec<usize>> = comps
        .iter()
        .map(|c| c.iter().copied().filter(|&i| in_seed[i]).collect())
        .collect();

    let mut timed_out = false;
    for (ci, comp) in comps.iter().enumerate() {
        if comp.len() == 1 {
            continue;
        }
        let local = |i: usize| comp.binary_search(&i).unwrap();
        let mut closed = Vec::with_capacity(comp.len());
        for &i in comp {
            let mut b = Bits::empty(comp.len());
            b.set(local(i));
            for &j in cg.neighbors(i) {
                b.set(local(j as usize));
            }
            closed.push(b);
        }
        let mut host: Vec<NodeId> = comp
            .iter()
            .flat_map(|&i| cg.clique(i).members().iter().copied())
            .collect();
        host.sort_unstable();
        host.dedup();
        let mut groups = vec![Bits::empty(comp.len()); host.len()];
        let mut members = Vec::with_capacity(comp.len());
        for (li, &i) in comp.iter().enumerate() {
            let ms: Vec<usize> = cg
                .clique(i)
                .members()
                .iter()
                .map(|u| host.binary_search(u).unwrap())
                .collect();
            for &m in &ms {
                groups[m].set(li);
            }
            members.push(ms);
        }
        let mut search = Component {
            closed,
            groups,
            members,
            deadline,
            steps: 0,
            best: picked[ci].len(),
            best_set: Vec::new(),
        };
        let finished = search.search(comp.len(), cg.k()).is_ok();
        if !search.best_set.is_empty() {
            picked[ci] = search.best_set.iter().map(|&li| comp[li]).collect();
        }
        if !finished {
            timed_out = true;
            break;
        }
    }

    let mut s = SolutionSet::new(cg.node_count());
    for i in picked.into_iter().flatten() {
        s.insert(cg.clique(i).clone());
    }
    match (timed_out, budget) {
        (true, Some(budget)) => Err(Error::Timeout {
            budget,
            incumbent: Box::new(s),
        }),
        _ => Ok(s),
    }
}

/// One clique's position inside its score-derived degree bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundMargin {
    pub clique: Clique,
    pub score: u64,
    pub degree: usize,
    /// `(k - 1) * degree - (score - k)`, non-negative when the lower bound holds.
    pub lower_slack: i64,
    /// `(score - k) - degree`, non-negative when the upper bound holds.
    pub upper_slack: i64,
}

#[derive(Clone, Debug, Default)]
pub struct ScoreBoundReport {
    pub margins: Vec<BoundMargin>,
}

/// Checks `(score - k) / (k - 1) <= degree <= score - k` for every clique, where
/// degree counts overlapping cliques.
pub fn check_score_bounds(g: &Graph, k: usize, cap: u64) -> Result<ScoreBoundReport> {
    let table = node_scores_of(g, k);
    let cg = build_clique_graph(g, k, cap)?;
    let mut margins = Vec::with_capacity(cg.len());
    for (i, c) in cg.cliques().iter().enumerate() {
        let score: u64 = c.members().iter().map(|&u| table.score(u)).sum();
        let degree = clique_degree(&cg, i);
        let excess = score as i64 - k as i64;
        let lower_slack = (k as i64 - 1) * degree as i64 - excess;
        let upper_slack = excess - degree as i64;
        if lower_slack < 0 || upper_slack < 0 {
            return Err(Error::ScoreBound {
                clique: c.members().to_vec(),
                score,
                degree,
            });
        }
        margins.push(BoundMargin {
            clique: c.clone(),
            score,
            degree,
            lower_slack,
            upper_slack,
        });
    }
    Ok(ScoreBoundReport { margins })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::testutil::brute_max_disjoint;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn index_of(g: &Graph, cg: &CliqueGraph, labels: &[u64]) -> usize {
        let c = Clique::new(
            labels
                .iter()
                .map(|&l| g.node_of_label(l).unwrap())
                .collect(),
        );
        cg.cliques().iter().position(|x| *x == c).unwrap()
    }

    #[test]
    fn triangle_chain_clique_graph() {
        let g = fixtures::triangle_chain();
        let cg = build_clique_graph(&g, 3, DEFAULT_CLIQUE_CAP).unwrap();
        assert_eq!(cg.len(), 7);
        let c1 = index_of(&g, &cg, &[1, 3, 6]);
        let c2 = index_of(&g, &cg, &[3, 5, 6]);
        let c3 = index_of(&g, &cg, &[5, 6, 8]);
        let mut expected = vec![c2 as u32, c3 as u32];
        expected.sort_unstable();
        assert_eq!(cg.neighbors(c1), expected.as_slice());
        assert_eq!(clique_degree(&cg, c1), 2);
        assert_eq!(clique_degree(&cg, c3), 4);
    }

    #[test]
    fn disjoint_triangles_are_isolated() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        let cg = build_clique_graph(&g, 3, 10).unwrap();
        assert_eq!(cg.len(), 2);
        assert_eq!(clique_degree(&cg, 0), 0);
        assert_eq!(exact_mis(&cg, None).unwrap().len(), 2);
    }

    #[test]
    fn capacity_error() {
        let g = fixtures::complete(8);
        let err = build_clique_graph(&g, 3, 10).unwrap_err();
        assert!(matches!(err, Error::Capacity { tau: 56, cap: 10 }), "{err}");
    }

    #[test]
    fn triangle_chain_optimum_is_three() {
        let g = fixtures::triangle_chain();
        let cg = build_clique_graph(&g, 3, DEFAULT_CLIQUE_CAP).unwrap();
        let s = exact_mis(&cg, Some(DEFAULT_TIME_BUDGET)).unwrap();
        assert_eq!(s.len(), 3);
        s.validate(&g, 3).unwrap();
    }

    #[test]
    fn single_clique() {
        let g = fixtures::complete(5);
        let cg = build_clique_graph(&g, 5, 10).unwrap();
        assert_eq!(exact_mis(&cg, None).unwrap().len(), 1);
    }

    #[test]
    fn matches_exhaustive_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let g = crate::generate::erdos_renyi(13, 0.45, &mut rng);
            let Ok(cg) = build_clique_graph(&g, 3, 40) else {
                continue;
            };
            let s = exact_mis(&cg, None).unwrap();
            s.validate(&g, 3).unwrap();
            assert_eq!(s.len(), brute_max_disjoint(cg.cliques()));
        }
    }

    #[test]
    fn zero_budget_times_out_with_incumbent() {
        let g = crate::generate::watts_strogatz(60, 8, 0.2, 3).unwrap();
        let cg = build_clique_graph(&g, 3, DEFAULT_CLIQUE_CAP).unwrap();
        match exact_mis(&cg, Some(Duration::ZERO)) {
            Err(Error::Timeout { incumbent, .. }) => {
                incumbent.validate(&g, 3).unwrap();
                assert!(!incumbent.is_empty());
            }
            // A small enough search can finish before the first clock check.
            Ok(s) => s.validate(&g, 3).unwrap(),
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn score_bounds_triangle_chain() {
        let g = fixtures::triangle_chain();
        let report = check_score_bounds(&g, 3, DEFAULT_CLIQUE_CAP).unwrap();
        let c1 = report
            .margins
            .iter()
            .find(|m| m.clique.members() == [0, 2, 5])
            .unwrap();
        assert_eq!((c1.score, c1.degree), (6, 2));
        assert_eq!((c1.lower_slack, c1.upper_slack), (1, 1));
    }

    #[test]
    fn isolated_clique_is_tight() {
        let g = fixtures::complete(3);
        let report = check_score_bounds(&g, 3, 10).unwrap();
        let m = &report.margins[0];
        assert_eq!(
            (m.score, m.degree, m.lower_slack, m.upper_slack),
            (3, 0, 0, 0)
        );
    }
}
