//! Small named graphs used throughout the tests.

use crate::graph::Graph;

/// Nine nodes, fifteen edges, seven triangles:
/// (1,3,6) (3,5,6) (5,6,8) (5,7,8) (7,8,9) (4,7,9) (2,4,9).
pub fn triangle_chain() -> Graph {
    const TRIANGLES: [[u64; 3]; 7] = [
        [1, 3, 6],
        [3, 5, 6],
        [5, 6, 8],
        [5, 7, 8],
        [7, 8, 9],
        [4, 7, 9],
        [2, 4, 9],
    ];
    let edges: Vec<(u64, u64)> = TRIANGLES
        .iter()
        .flat_map(|t| [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])])
        .collect();
    Graph::from_labeled_edges(&edges)
}

/// Triangles (1,2,3), (3,4,5), (9,10,11) plus the path 5-6-7.
pub fn dangling_path() -> Graph {
    Graph::from_labeled_edges(&[
        (1, 2),
        (1, 3),
        (2, 3),
        (3, 4),
        (3, 5),
        (4, 5),
        (9, 10),
        (9, 11),
        (10, 11),
        (5, 6),
        (6, 7),
    ])
}

/// [`dangling_path`] with the extra edge 5-7, closing the triangle (5,6,7).
pub fn closed_path() -> Graph {
    let mut g = dangling_path();
    let (a, b) = (g.node_of_label(5).unwrap(), g.node_of_label(7).unwrap());
    g.insert_edge(a, b).unwrap();
    g
}

/// Complete graph on `n` nodes.
pub fn complete(n: usize) -> Graph {
    let n32 = n as u32;
    Graph::from_edges(n, (0..n32).flat_map(|u| (u + 1..n32).map(move |v| (u, v))))
}
