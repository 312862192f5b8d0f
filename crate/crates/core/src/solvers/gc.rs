use std::time::Instant;

use crate::clique::{clique_score, compute_node_scores, for_each_clique, Clique, TieBreak};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ordering::NodeOrdering;
use crate::oriented::orient;
use crate::solution::SolutionSet;

use super::SolveStats;

pub const DEFAULT_GC_CAP_BYTES: u64 = 2 << 30;

#[derive(Clone, Copy, Debug)]
pub struct GcOptions {
    pub ties: TieBreak,
    /// Refuse to run when the materialized cliques would exceed this many bytes.
    pub cap_bytes: u64,
}

impl Default for GcOptions {
    fn default() -> Self {
        GcOptions {
            ties: TieBreak::Canonical,
            cap_bytes: DEFAULT_GC_CAP_BYTES,
        }
    }
}

/// Footprint of one stored clique: handle, members, allocator header, score.
fn bytes_per_clique(k: usize) -> u64 {
    (std::mem::size_of::<Clique>() + 4 * k + 16 + 8) as u64
}

pub fn solve_gc(g: &Graph, k: usize, opts: &GcOptions) -> Result<SolutionSet> {
    solve_gc_with_stats(g, k, opts).map(|(s, _)| s)
}

/// Materializes every k-clique with its score, then accepts greedily in
/// ascending score order.
pub fn solve_gc_with_stats(
    g: &Graph,
    k: usize,
    opts: &GcOptions,
) -> Result<(SolutionSet, SolveStats)> {
    assert!(k >= 3, "clique size k must be at least 3, got {k}");
    let start = Instant::now();
    let og = orient(g, &NodeOrdering::by_degree(g));
    let table = compute_node_scores(&og, k);
    let score_time = start.elapsed();
    let tau = table.tau();
    let estimated_bytes = tau.saturating_mul(bytes_per_clique(k));
    if estimated_bytes > opts.cap_bytes {
        return Err(Error::MemoryGuard {
            tau,
            estimated_bytes,
            cap_bytes: opts.cap_bytes,
        });
    }

    let start = Instant::now();
    let mut scored: Vec<(u64, Clique)> = Vec::with_capacity(tau as usize);
    for_each_clique(&og, k, |c| {
        scored.push((clique_score(c, &table), Clique::new(c.to_vec())));
    });
    match opts.ties {
        TieBreak::Canonical => scored.sort_unstable(),
        TieBreak::FirstFound => scored.sort_by_key(|(s, _)| *s),
    }
    let mut s = SolutionSet::new(g.n());
    for (_, c) in scored {
        if c.members().iter().all(|&u| s.is_free(u)) {
            s.insert(c);
        }
    }
    let stats = SolveStats {
        tau: Some(tau),
        score_time,
        solve_time: start.elapsed(),
    };
    Ok((s, stats))
}
