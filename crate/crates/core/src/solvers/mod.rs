//! Static strategies producing a maximal disjoint k-clique set.
//!
//! * [`solve_hg`]: scan nodes by a total order, take the first clique each one roots.
//! * [`solve_gc`]: materialize every clique, accept in ascending clique score.
//! * [`solve_lp`]: the same acceptance order as `solve_gc` without storing the
//!   cliques, using per-root minimum-score cliques in a lazy min-heap.

mod gc;
mod hg;
mod lp;

use std::collections::HashSet;
use std::time::Duration;

pub use gc::{solve_gc, solve_gc_with_stats, GcOptions, DEFAULT_GC_CAP_BYTES};
pub use hg::solve_hg;
pub use lp::{solve_lp, solve_lp_with_stats, LpOptions};

use crate::clique::{Clique, TieBreak};
use crate::graph::NodeId;

/// Phase timings and the clique count, when a solver computed it.
#[derive(Clone, Debug, Default)]
pub struct SolveStats {
    pub tau: Option<u64>,
    pub score_time: Duration,
    pub solve_time: Duration,
}

/// Greedy disjoint selection in ascending clique score.
///
/// `node_score` scores individual nodes; a clique scores the sum over its
/// members. Returns indices into `cliques` of the accepted ones, in acceptance
/// order.
pub fn greedy_by_score(
    cliques: &[Clique],
    node_score: impl Fn(NodeId) -> u64,
    ties: TieBreak,
) -> Vec<usize> {
    let score = |c: &Clique| c.members().iter().map(|&u| node_score(u)).sum::<u64>();
    let mut order: Vec<(u64, usize)> = cliques
        .iter()
        .enumerate()
        .map(|(i, c)| (score(c), i))
        .collect();
    match ties {
        TieBreak::Canonical => order
            .sort_unstable_by(|a, b| a.0.cmp(&b.0).then_with(|| cliques[a.1].cmp(&cliques[b.1]))),
        TieBreak::FirstFound => order.sort_by_key(|&(s, _)| s),
    }
    let mut used = HashSet::new();
    let mut picked = Vec::new();
    for (_, i) in order {
        let members = cliques[i].members();
        if members.iter().all(|u| !used.contains(u)) {
            used.extend(members.iter().copied());
            picked.push(i);
        }
    }
    picked
}

/// Runs `f` on a dedicated pool of `threads` workers, or the global pool for 0.
pub(crate) fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    if threads == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}
