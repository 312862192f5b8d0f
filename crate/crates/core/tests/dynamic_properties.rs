mod common;

use common::arb_graph;
use dkc_core::dynamic::{build_candidate_index, SwapQueue};
use dkc_core::{
    solve_lp, verify_maximal, DynamicState, Graph, LpOptions, NodeId, UpdateKind, UpdateOp,
};
use proptest::prelude::*;

fn arb_ops(n: usize, len: usize) -> impl Strategy<Value = Vec<(bool, NodeId, NodeId)>> {
    proptest::collection::vec((any::<bool>(), 0..n as NodeId, 0..n as NodeId), 0..len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_update_keeps_state_consistent(
        g in arb_graph(20, 0.35),
        k in 3usize..=4,
        ops in arb_ops(20, 60),
    ) {
        let n = g.n() as NodeId;
        let mut state = DynamicState::from_lp(g, k, &LpOptions::default());
        for (insert, u, v) in ops {
            let (u, v) = (u % n, v % n);
            if u == v {
                continue;
            }
            let before = state.solution().len();
            let kind = if insert { UpdateKind::Insert } else { UpdateKind::Delete };
            let (had, broke) = {
                let g = state.graph();
                let slot = |x| state.solution().slot_of(x);
                (g.has_edge(u, v), slot(u).is_some() && slot(u) == slot(v))
            };
            state.apply(UpdateOp { kind, u, v }).unwrap();
            if let Err(e) = state.verify() {
                return Err(TestCaseError::fail(e));
            }
            if insert && !had {
                prop_assert!(state.solution().len() >= before);
            }
            if !insert && had && !broke {
                prop_assert!(state.solution().len() >= before);
            }
            if !insert {
                prop_assert!(state.solution().iter().all(|(_, c)| !(c.contains(u) && c.contains(v))));
            }
        }
    }

    #[test]
    fn swapping_every_clique_never_shrinks(g in arb_graph(22, 0.4), k in 3usize..=4) {
        let s = solve_lp(&g, k, &LpOptions::default());
        let before = s.len();
        let slots: Vec<usize> = s.iter().map(|(slot, _)| slot).collect();
        let mut state = DynamicState::new(g, k, s).unwrap();
        let mut q = SwapQueue::new();
        slots.into_iter().for_each(|slot| q.push(slot));
        state.try_swap(&mut q);
        prop_assert!(state.solution().len() >= before);
        if let Err(e) = state.verify() {
            return Err(TestCaseError::fail(e));
        }
    }

    #[test]
    fn delete_then_reinsert_is_maximal(g in arb_graph(18, 0.45), k in 3usize..=4, pick in any::<prop::sample::Index>()) {
        let edges: Vec<(NodeId, NodeId)> = g.edges().collect();
        prop_assume!(!edges.is_empty());
        let (u, v) = edges[pick.index(edges.len())];
        let mut state = DynamicState::from_lp(g, k, &LpOptions::default());
        state.delete_edge(u, v).unwrap();
        let after_delete = state.solution().len();
        state.insert_edge(u, v).unwrap();
        prop_assert!(state.solution().len() >= after_delete);
        prop_assert!(verify_maximal(state.graph(), k, state.solution()));
        if let Err(e) = state.verify() {
            return Err(TestCaseError::fail(e));
        }
    }
}

#[test]
fn no_free_nodes_means_empty_index() {
    let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]);
    let s = solve_lp(&g, 3, &LpOptions::default());
    assert_eq!(s.len(), 2);
    assert!(build_candidate_index(&g, 3, &s).unwrap().is_empty());
}
