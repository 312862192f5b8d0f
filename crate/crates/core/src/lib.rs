//! Disjoint k-clique sets: enumeration, static solvers, an exact referee for
//! small graphs, and maintenance under edge updates.

pub mod clique;
pub mod dynamic;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod ordering;
pub mod oriented;
pub mod solution;
pub mod solvers;

#[cfg(test)]
mod testutil;

pub use clique::{
    clique_score, compute_node_scores, find_min, find_one, for_each_clique, list_cliques,
    node_scores_of, Clique, CliqueScore, NodeScoreTable, TieBreak,
};
pub use dynamic::{DynamicState, UpdateKind, UpdateOp};
pub use error::{Error, Result};
pub use graph::{load_edge_list, Graph, NodeId};
pub use ordering::{build_ordering, NodeOrdering, OrderingKind};
pub use oriented::{orient, OrientedGraph};
pub use solution::{free_clique, verify_maximal, SlotId, SolutionSet};
pub use solvers::{solve_gc, solve_hg, solve_lp, GcOptions, LpOptions, SolveStats};
