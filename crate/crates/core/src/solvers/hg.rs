use crate::clique::find_one;
use crate::graph::Graph;
use crate::ordering::NodeOrdering;
use crate::oriented::orient;
use crate::solution::SolutionSet;

/// Basic framework: visit nodes in ascending rank and accept the first
/// clique each still-valid node roots, removing its members at once.
pub fn solve_hg(g: &Graph, k: usize, ordering: &NodeOrdering) -> SolutionSet {
    assert!(k >= 3, "clique size k must be at least 3, got {k}");
    let mut og = orient(g, ordering);
    let mut s = SolutionSet::new(g.n());
    for &u in ordering.ascending() {
        if !og.is_valid(u) || og.out_degree(u) < k - 1 {
            continue;
        }
        og.compact(u);
        if let Some(c) = find_one(&og, k, u) {
            for &v in c.members() {
                og.remove_node(v);
            }
            s.insert(c);
        }
    }
    s
}
