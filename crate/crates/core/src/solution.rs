//! Disjoint k-clique sets with a node-to-clique assignment.

use crate::clique::{find_one, Clique};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::ordering::NodeOrdering;
use crate::oriented::orient;

/// Stable handle of a clique inside a [`SolutionSet`]. Never reused.
pub type SlotId = usize;

/// A set of pairwise disjoint cliques. Nodes assigned to no clique are free.
#[derive(Clone, Debug, Default)]
pub struct SolutionSet {
    slots: Vec<Option<Clique>>,
    assignment: Vec<Option<SlotId>>,
    len: usize,
}

impl SolutionSet {
    /// Empty set over `n` nodes.
    pub fn new(n: usize) -> Self {
        SolutionSet {
            slots: Vec::new(),
            assignment: vec![None; n],
            len: 0,
        }
    }

    /// Collects `cliques`, failing on overlap or out-of-range members.
    pub fn from_cliques(n: usize, cliques: impl IntoIterator<Item = Clique>) -> Result<Self> {
        let mut s = SolutionSet::new(n);
        for c in cliques {
            s.try_insert(c)?;
        }
        Ok(s)
    }

    pub fn node_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn is_free(&self, u: NodeId) -> bool {
        self.assignment[u as usize].is_none()
    }

    #[inline]
    pub fn slot_of(&self, u: NodeId) -> Option<SlotId> {
        self.assignment[u as usize]
    }

    pub fn get(&self, slot: SlotId) -> Option<&Clique> {
        self.slots.get(slot).and_then(Option::as_ref)
    }

    pub fn contains_slot(&self, slot: SlotId) -> bool {
        self.get(slot).is_some()
    }

    pub fn try_insert(&mut self, clique: Clique) -> Result<SlotId> {
        for &u in clique.members() {
            match self.assignment.get(u as usize) {
                None => {
                    return Err(Error::InvalidSolution(format!(
                        "node {u} out of range for {} nodes",
                        self.assignment.len()
                    )))
                }
                Some(Some(_)) => {
                    return Err(Error::InvalidSolution(format!(
                        "node {u} already covered by another clique"
                    )))
                }
                Some(None) => {}
            }
        }
        let slot = self.slots.len();
        for &u in clique.members() {
            self.assignment[u as usize] = Some(slot);
        }
        self.slots.push(Some(clique));
        self.len += 1;
        Ok(slot)
    }

    /// Adds `clique`. Panics if it overlaps the set.
    pub fn insert(&mut self, clique: Clique) -> SlotId {
        self.try_insert(clique)
            .expect("clique must be disjoint from the set")
    }

    /// Removes the clique in `slot`, freeing its nodes.
    pub fn remove(&mut self, slot: SlotId) -> Option<Clique> {
        let clique = self.slots.get_mut(slot)?.take()?;
        for &u in clique.members() {
            self.assignment[u as usize] = None;
        }
        self.len -= 1;
        Some(clique)
    }

    pub fn iter(&self) -> impl Iterator<Item = (SlotId, &Clique)> {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.as_ref().map(|c| (i, c)))
    }

    /// Member cliques in canonical order, for set comparison and output.
    pub fn sorted_cliques(&self) -> Vec<Clique> {
        let mut v: Vec<Clique> = self.iter().map(|(_, c)| c.clone()).collect();
        v.sort_unstable();
        v
    }

    pub fn free_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, a)| a.is_none())
            .map(|(u, _)| u as NodeId)
    }

    /// Checks disjointness, assignment consistency and that every member is a
    /// k-clique of `g`.
    pub fn validate(&self, g: &Graph, k: usize) -> std::result::Result<(), String> {
        if self.assignment.len() != g.n() {
            return Err(format!(
                "solution covers {} nodes, graph has {}",
                self.assignment.len(),
                g.n()
            ));
        }
        let mut owner = vec![None; g.n()];
        let mut count = 0;
        for (slot, c) in self.iter() {
            count += 1;
            if c.len() != k {
                return Err(format!(
                    "clique {:?} has size {}, not {k}",
                    c.members(),
                    c.len()
                ));
            }
            if !c.is_clique_in(g) {
                return Err(format!("{:?} is not a clique of the graph", c.members()));
            }
            for &u in c.members() {
                if owner[u as usize].replace(slot).is_some() {
                    return Err(format!("node {u} lies in two cliques"));
                }
            }
        }
        if owner != self.assignment {
            return Err("node assignment disagrees with the member cliques".into());
        }
        if count != self.len {
            return Err(format!("len {} but {count} cliques stored", self.len));
        }
        Ok(())
    }
}

/// A k-clique made only of free nodes, if one exists.
pub fn free_clique(g: &Graph, k: usize, s: &SolutionSet) -> Option<Clique> {
    let mut og = orient(g, &NodeOrdering::natural(g.n()));
    for u in g.nodes() {
        if !s.is_free(u) {
            og.remove_node(u);
        }
    }
    g.nodes().find_map(|u| find_one(&og, k, u))
}

/// Whether no k-clique can be added to `s` without breaking disjointness.
pub fn verify_maximal(g: &Graph, k: usize, s: &SolutionSet) -> bool {
    free_clique(g, k, s).is_none()
}
