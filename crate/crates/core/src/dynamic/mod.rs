//! Maintaining a disjoint k-clique set under edge insertions and deletions.

mod index;
mod stream;

use std::collections::{BTreeSet, HashSet, VecDeque};

pub use index::{build_candidate_index, CandidateIndex, IndexSnapshot};
pub use stream::{parse_update_stream, replay, ReplayMetrics, StreamOp};

use crate::clique::{Clique, TieBreak};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::solution::{verify_maximal, SlotId, SolutionSet};
use crate::solvers::{greedy_by_score, solve_lp, LpOptions};
use index::{classify, cliques_through};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UpdateKind {
    Insert,
    Delete,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UpdateOp {
    pub kind: UpdateKind,
    pub u: NodeId,
    pub v: NodeId,
}

/// FIFO of solution cliques awaiting a swap attempt, without duplicates.
#[derive(Clone, Debug, Default)]
pub struct SwapQueue {
    queue: VecDeque<SlotId>,
    queued: HashSet<SlotId>,
}

impl SwapQueue {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, slot: SlotId) {
        if self.queued.insert(slot) {
            self.queue.push_back(slot);
        }
    }

    pub fn pop(&mut self) -> Option<SlotId> {
        let slot = self.queue.pop_front()?;
        self.queued.remove(&slot);
        Some(slot)
    }

    pub fn len(&self) -> usize {
        self.queue.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queue.is_empty()
    }
}

/// Graph, solution and candidate index kept consistent across updates.
#[derive(Clone, Debug)]
pub struct DynamicState {
    g: Graph,
    k: usize,
    s: SolutionSet,
    index: CandidateIndex,
}

impl DynamicState {
    /// Starts from a given maximal solution.
    pub fn new(g: Graph, k: usize, s: SolutionSet) -> Result<Self> {
        assert!(k >= 3, "clique size k must be at least 3, got {k}");
        s.validate(&g, k).map_err(Error::InvalidSolution)?;
        let index = build_candidate_index(&g, k, &s)?;
        Ok(DynamicState { g, k, s, index })
    }

    /// Starts from the lightweight solver's output.
    pub fn from_lp(g: Graph, k: usize, opts: &LpOptions) -> Self {
        let s = solve_lp(&g, k, opts);
        Self::new(g, k, s).expect("solver output is a valid maximal set")
    }

    pub fn graph(&self) -> &Graph {
        &self.g
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn solution(&self) -> &SolutionSet {
        &self.s
    }

    pub fn index(&self) -> &CandidateIndex {
        &self.index
    }

    pub fn index_snapshot(&self) -> IndexSnapshot {
        self.index.snapshot(&self.s)
    }

    pub fn apply(&mut self, op: UpdateOp) -> Result<bool> {
        match op.kind {
            UpdateKind::Insert => self.insert_edge(op.u, op.v),
            UpdateKind::Delete => self.delete_edge(op.u, op.v),
        }
    }

    /// Inserts `<u, v>` and updates the solution. Returns false if the edge existed.
    pub fn insert_edge(&mut self, u: NodeId, v: NodeId) -> Result<bool> {
        if !self.g.insert_edge(u, v)? {
            return Ok(false);
        }
        let (u_free, v_free) = (self.s.is_free(u), self.s.is_free(v));
        if !u_free && !v_free {
            // Any new clique spans two solution cliques: not a candidate.
            return Ok(true);
        }
        let mut fresh = Vec::new();
        cliques_through(&self.g, self.k, &[u.min(v), u.max(v)], |c| {
            fresh.push(c.to_vec())
        });
        fresh.sort_unstable();

        if u_free && v_free {
            let all_free = fresh.iter().find(|c| c.iter().all(|&w| self.s.is_free(w)));
            if let Some(c) = all_free {
                let c = Clique::new(c.clone());
                let members = c.members().to_vec();
                self.s.insert(c);
                self.repair(&members);
                return Ok(true);
            }
        }

        let mut gained = BTreeSet::new();
        for c in fresh {
            if let Some(anchor) = classify(&self.s, &c) {
                if self.index.insert(Clique::new(c), anchor) {
                    gained.insert(anchor);
                }
            }
        }
        let mut q = SwapQueue::new();
        gained.into_iter().for_each(|slot| q.push(slot));
        self.try_swap(&mut q);
        Ok(true)
    }

    /// Deletes `<u, v>` and updates the solution. Returns false if the edge was absent.
    pub fn delete_edge(&mut self, u: NodeId, v: NodeId) -> Result<bool> {
        if !self.g.delete_edge(u, v)? {
            return Ok(false);
        }
        for c in self.index.containing(u) {
            if c.contains(v) {
                self.index.remove(&c);
            }
        }
        let slot = match (self.s.slot_of(u), self.s.slot_of(v)) {
            (Some(a), Some(b)) if a == b => a,
            _ => return Ok(true),
        };
        let broken = self.s.remove(slot).expect("slot is live");
        let mut gained = self.repair(broken.members());
        gained.extend(self.restore_maximality(broken.members()));
        let mut q = SwapQueue::new();
        gained
            .into_iter()
            .filter(|&slot| self.s.contains_slot(slot))
            .for_each(|slot| q.push(slot));
        self.try_swap(&mut q);
        Ok(true)
    }

    /// Replaces queued cliques by two or more disjoint candidates when the
    /// score greedy over their candidates finds them. Never shrinks the solution.
    pub fn try_swap(&mut self, q: &mut SwapQueue) {
        while let Some(slot) = q.pop() {
            if !self.s.contains_slot(slot) {
                continue;
            }
            let cands = self.index.candidates(slot);
            if cands.len() < 2 {
                continue;
            }
            let mut local = std::collections::HashMap::new();
            for c in &cands {
                for &w in c.members() {
                    *local.entry(w).or_insert(0u64) += 1;
                }
            }
            let picked = greedy_by_score(&cands, |w| local[&w], TieBreak::Canonical);
            if picked.len() < 2 {
                continue;
            }
            let old = self.s.remove(slot).expect("slot is live");
            let mut changed: BTreeSet<NodeId> = old.members().iter().copied().collect();
            for &i in &picked {
                changed.extend(cands[i].members().iter().copied());
                self.s.insert(cands[i].clone());
            }
            let changed: Vec<NodeId> = changed.into_iter().collect();
            let mut gained = self.repair(&changed);
            gained.extend(self.restore_maximality(old.members()));
            for slot in gained {
                if self.s.contains_slot(slot) {
                    q.push(slot);
                }
            }
        }
    }

    /// Re-derives every candidate through `nodes` after their assignment
    /// changed. Returns anchors that received candidates they did not have.
    fn repair(&mut self, nodes: &[NodeId]) -> BTreeSet<SlotId> {
        let mut dropped = HashSet::new();
        for &x in nodes {
            for c in self.index.containing(x) {
                if let Some(anchor) = self.index.remove(&c) {
                    dropped.insert((c, anchor));
                }
            }
        }
        let mut gained = BTreeSet::new();
        for &x in nodes {
            let mut found = Vec::new();
            cliques_through(&self.g, self.k, &[x], |c| found.push(c.to_vec()));
            for c in found {
                if let Some(anchor) = classify(&self.s, &c) {
                    let c = Clique::new(c);
                    if self.index.anchor_of(&c).is_none() {
                        let known = dropped.contains(&(c.clone(), anchor));
                        self.index.insert(c, anchor);
                        if !known {
                            gained.insert(anchor);
                        }
                    }
                }
            }
        }
        gained
    }

    /// Adds all-free cliques through any of `seeds` until none is left.
    fn restore_maximality(&mut self, seeds: &[NodeId]) -> BTreeSet<SlotId> {
        let mut gained = BTreeSet::new();
        for &x in seeds {
            while self.s.is_free(x) {
                let mut first: Option<Vec<NodeId>> = None;
                cliques_through(&self.g, self.k, &[x], |c| {
                    if c.iter().all(|&w| self.s.is_free(w))
                        && first.as_ref().is_none_or(|f| c < f.as_slice())
                    {
                        first = Some(c.to_vec());
                    }
                });
                let Some(c) = first else { break };
                self.s.insert(Clique::new(c.clone()));
                gained.extend(self.repair(&c));
            }
        }
        gained
    }

    /// Full consistency check: valid disjoint cliques, maximality, and an
    /// index equal to one rebuilt from scratch.
    pub fn verify(&self) -> std::result::Result<(), String> {
        self.g.validate()?;
        self.s.validate(&self.g, self.k)?;
        if !verify_maximal(&self.g, self.k, &self.s) {
            return Err("solution is not maximal".into());
        }
        for (c, anchor) in self.index.iter() {
            if !c.is_clique_in(&self.g) {
                return Err(format!("candidate {:?} is not a clique", c.members()));
            }
            if classify(&self.s, c.members()) != Some(anchor) {
                return Err(format!("candidate {:?} has the wrong anchor", c.members()));
            }
        }
        let rebuilt = build_candidate_index(&self.g, self.k, &self.s).map_err(|e| e.to_string())?;
        if rebuilt.snapshot(&self.s) != self.index_snapshot() {
            return Err(format!(
                "index holds {} candidates, rebuild finds {}",
                self.index.len(),
                rebuilt.len()
            ));
        }
        Ok(())
    }
}
