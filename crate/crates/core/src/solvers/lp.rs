use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

use rayon::prelude::*;

use crate::clique::{find_min, node_scores_of, Clique, CliqueScore, TieBreak};
use crate::graph::{Graph, NodeId};
use crate::ordering::NodeOrdering;
use crate::oriented::orient;
use crate::solution::SolutionSet;

use super::{with_threads, SolveStats};

#[derive(Clone, Copy, Debug)]
pub struct LpOptions {
    /// Score-driven pruning inside the per-root search.
    pub pruning: bool,
    pub ties: TieBreak,
    /// Workers for score counting and heap initialization; 0 uses the global pool.
    pub threads: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions {
            pruning: true,
            ties: TieBreak::Canonical,
            threads: 0,
        }
    }
}

/// A root's current minimum-score clique. `owner` is its highest-ranked member.
#[derive(Debug)]
struct HeapEntry {
    score: CliqueScore,
    clique: Clique,
    owner: NodeId,
    canonical: bool,
}

impl HeapEntry {
    fn key_cmp(&self, other: &Self) -> Ordering {
        let by_clique = if self.canonical {
            self.clique.cmp(&other.clique)
        } else {
            Ordering::Equal
        };
        self.score
            .cmp(&other.score)
            .then(by_clique)
            .then(self.owner.cmp(&other.owner))
    }
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.key_cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Reversed: BinaryHeap is a max-heap.
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.key_cmp(self)
    }
}

pub fn solve_lp(g: &Graph, k: usize, opts: &LpOptions) -> SolutionSet {
    solve_lp_with_stats(g, k, opts).0
}

/// Lightweight solver: node scores, score ordering, one local-minimum clique
/// per root in a min-heap, then pop-accept-or-refresh until the heap drains.
pub fn solve_lp_with_stats(g: &Graph, k: usize, opts: &LpOptions) -> (SolutionSet, SolveStats) {
    assert!(k >= 3, "clique size k must be at least 3, got {k}");
    with_threads(opts.threads, || {
        let start = Instant::now();
        let table = node_scores_of(g, k);
        let score_time = start.elapsed();

        let start = Instant::now();
        let ordering = NodeOrdering::by_score(table.scores());
        let mut og = orient(g, &ordering);
        let canonical = opts.ties == TieBreak::Canonical;
        let entry = |(clique, score): (Clique, CliqueScore), owner| HeapEntry {
            score,
            clique,
            owner,
            canonical,
        };

        let initial: Vec<HeapEntry> = (0..g.n() as NodeId)
            .into_par_iter()
            .filter_map(|u| {
                find_min(&og, k, u, &table, opts.pruning, opts.ties).map(|found| entry(found, u))
            })
            .collect();
        // Entry keys are unique, so pop order does not depend on collection order.
        let mut heap = BinaryHeap::from(initial);

        let mut s = SolutionSet::new(g.n());
        while let Some(top) = heap.pop() {
            if top.clique.members().iter().all(|&u| og.is_valid(u)) {
                for &u in top.clique.members() {
                    og.remove_node(u);
                }
                s.insert(top.clique);
            } else if og.is_valid(top.owner) && og.out_degree(top.owner) >= k - 1 {
                og.compact(top.owner);
                if let Some(found) = find_min(&og, k, top.owner, &table, opts.pruning, opts.ties) {
                    heap.push(entry(found, top.owner));
                }
            }
        }
        let stats = SolveStats {
            tau: Some(table.tau()),
            score_time,
            solve_time: start.elapsed(),
        };
        (s, stats)
    })
}
