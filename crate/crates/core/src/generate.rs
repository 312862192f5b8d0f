//! Random graph generators.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// G(n, p): every pair is an edge independently with probability `p`.
pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let n32 = n as NodeId;
    let mut edges = Vec::new();
    for u in 0..n32 {
        for v in u + 1..n32 {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Watts–Strogatz small world graph.
///
/// Starts from a ring lattice where each node links to its `mean_degree / 2`
/// nearest neighbours on each side, then visits every lattice edge `(u, u + j)`
/// and, with probability `rewire_prob`, moves its far end to a uniformly drawn
/// node that is neither `u` nor already adjacent to `u`. Edge count is always
/// `n * mean_degree / 2`. Deterministic for a given `seed`.
pub fn watts_strogatz(n: usize, mean_degree: usize, rewire_prob: f64, seed: u64) -> Result<Graph> {
    if !mean_degree.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "mean degree {mean_degree} must be even"
        )));
    }
    if mean_degree >= n {
        return Err(Error::InvalidParameter(format!(
            "mean degree {mean_degree} must be below n = {n}"
        )));
    }
    if !(0.0..=1.0).contains(&rewire_prob) {
        return Err(Error::InvalidParameter(format!(
            "rewire probability {rewire_prob} outside [0, 1]"
        )));
    }
    let half = mean_degree / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj: Vec<Vec<NodeId>> = vec![Vec::with_capacity(mean_degree + 2); n];
    let link = |adj: &mut Vec<Vec<NodeId>>, a: usize, b: usize| {
        adj[a].push(b as NodeId);
        adj[b].push(a as NodeId);
    };
    for u in 0..n {
        for j in 1..=half {
            link(&mut adj, u, (u + j) % n);
        }
    }
    let nodes: Vec<usize> = (0..n).collect();
    for j in 1..=half {
        for u in 0..n {
            if !rng.random_bool(rewire_prob) {
                continue;
            }
            let v = (u + j) % n;
            if !adj[u].contains(&(v as NodeId)) {
                // Already moved away by an earlier rewiring of the reverse pair.
                continue;
            }
            // A node adjacent to everything has no legal new endpoint.
            if adj[u].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = *nodes.choose(&mut rng).unwrap();
                if w != u && !adj[u].contains(&(w as NodeId)) {
                    break w;
                }
            };
            adj[u].retain(|&x| x as usize != v);
            adj[v].retain(|&x| x as usize != u);
            link(&mut adj, u, w);
        }
    }
    let edges = adj.iter().enumerate().flat_map(|(u, list)| {
        list.iter()
            .filter(move |&&v| (v as usize) > u)
            .map(move |&v| (u as NodeId, v))
    });
    Ok(Graph::from_edges(n, edges))
}
