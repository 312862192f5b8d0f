//! Undirected simple graphs with sorted adjacency lists.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Dense internal node index in `[0, n)`.
pub type NodeId = u32;

/// An undirected simple graph.
///
/// Every adjacency list is strictly ascending and symmetric. Nodes carry the
/// external label they were loaded under; labels are kept in ascending order,
/// so internal ids follow label order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<NodeId>>,
    m: usize,
    labels: Vec<u64>,
}

impl Graph {
    /// `n` isolated nodes labelled `0..n`.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
            labels: (0..n as u64).collect(),
        }
    }

    /// Builds a graph on `n` nodes, dropping self-loops and duplicate edges.
    ///
    /// Panics if an endpoint is `>= n`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(
                (u as usize) < n && (v as usize) < n,
                "edge ({u}, {v}) out of range"
            );
            if u != v {
                adj[u as usize].push(v);
                adj[v as usize].push(u);
            }
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Graph {
            adj,
            m: m / 2,
            labels: (0..n as u64).collect(),
        }
    }

    /// Builds a graph whose nodes are the distinct labels mentioned by `edges`.
    pub fn from_labeled_edges(edges: &[(u64, u64)]) -> Self {
        Self::from_labeled_parts(&[], edges)
    }

    /// Like [`Graph::from_labeled_edges`], plus the extra (possibly isolated) `nodes`.
    pub fn from_labeled_parts(nodes: &[u64], edges: &[(u64, u64)]) -> Self {
        let mut labels: Vec<u64> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        labels.extend_from_slice(nodes);
        labels.sort_unstable();
        labels.dedup();
        let id = |label: u64| labels.binary_search(&label).unwrap() as NodeId;
        let mut g = Graph::from_edges(labels.len(), edges.iter().map(|&(a, b)| (id(a), id(b))));
        g.labels = labels;
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.adj[u as usize].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.adj[u as usize]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adj
            .get(u as usize)
            .is_some_and(|list| list.binary_search(&v).is_ok())
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        0..self.n() as NodeId
    }

    /// Every edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = u as NodeId;
            list.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn label(&self, u: NodeId) -> u64 {
        self.labels[u as usize]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn node_of_label(&self, label: u64) -> Option<NodeId> {
        self.labels.binary_search(&label).ok().map(|i| i as NodeId)
    }

    fn check_pair(&self, u: NodeId, v: NodeId) -> Result<()> {
        for node in [u, v] {
            if node as usize >= self.n() {
                return Err(Error::NodeOutOfRange { node, n: self.n() });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(())
    }

    /// Adds `<u, v>`; returns whether the graph changed.
    pub fn insert_edge(&mut self, u: NodeId, v: NodeId) -> Result<bool> {
        self.check_pair(u, v)?;
        let pos = match self.adj[u as usize].binary_search(&v) {
            Ok(_) => return Ok(false),
            Err(pos) => pos,
        };
        self.adj[u as usize].insert(pos, v);
        let list = &mut self.adj[v as usize];
        let pos = list.binary_search(&u).unwrap_err();
        list.insert(pos, u);
        self.m += 1;
        Ok(true)
    }

    /// Removes `<u, v>`; returns whether the graph changed.
    pub fn delete_edge(&mut self, u: NodeId, v: NodeId) -> Result<bool> {
        self.check_pair(u, v)?;
        let pos = match self.adj[u as usize].binary_search(&v) {
            Ok(pos) => pos,
            Err(_) => return Ok(false),
        };
        self.adj[u as usize].remove(pos);
        let list = &mut self.adj[v as usize];
        let pos = list.binary_search(&u).unwrap();
        list.remove(pos);
        self.m -= 1;
        Ok(true)
    }

    /// Checks symmetry, strict sortedness, absence of self-loops and the edge count.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let mut total = 0;
        for (u, list) in self.adj.iter().enumerate() {
            let u = u as NodeId;
            total += list.len();
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("adjacency of {u} is not strictly ascending"));
            }
            for &v in list {
                if v == u {
                    return Err(format!("self-loop on {u}"));
                }
                if v as usize >= self.n() {
                    return Err(format!("neighbor {v} of {u} out of range"));
                }
                if !self.has_edge(v, u) {
                    return Err(format!("edge {u}-{v} is not symmetric"));
                }
            }
        }
        if total != 2 * self.m {
            return Err(format!(
                "m = {} but adjacency holds {total} entries",
                self.m
            ));
        }
        if self.labels.len() != self.n() || self.labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err("labels are not strictly ascending".into());
        }
        Ok(())
    }

    /// Writes the edge list as `label label` lines.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (u, v) in self.edges() {
            writeln!(out, "{} {}", self.label(u), self.label(v))?;
        }
        Ok(())
    }

    /// Writes `internal external` lines, one per node.
    pub fn write_label_map<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (u, label) in self.labels.iter().enumerate() {
            writeln!(out, "{u} {label}")?;
        }
        Ok(())
    }
}

/// Parses a whitespace-separated edge list.
///
/// Lines starting with `#` or `%` are comments, blank lines are skipped, and
/// columns after the first two (weights, timestamps) are ignored. Self-loops and
/// repeated edges are dropped.
pub fn load_edge_list<R: BufRead>(source: R) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut self_loop_labels = Vec::new();
    for (idx, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut endpoint = || -> Result<u64> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: lineno,
                message: "expected two node labels".into(),
            })?;
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid node label {tok:?}"),
            })
        };
        let a = endpoint()?;
        let b = endpoint()?;
        if a == b {
            self_loop_labels.push(a);
        } else {
            edges.push((a, b));
        }
    }
    // Nodes that only ever appear on a self-loop are still nodes.
    Ok(Graph::from_labeled_parts(&self_loop_labels, &edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn dedup_and_self_loop_drop() {
        let g = load_edge_list("1 2\n2 1\n1 1".as_bytes()).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        g.validate().unwrap();
    }

    #[test]
    fn comments_and_extra_columns() {
        let text = "% sym unweighted\n# note\n\n10 20 1 99\n20 30\n";
        let g = load_edge_list(text.as_bytes()).unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(g.labels(), &[10, 20, 30]);
        assert_eq!(g.node_of_label(30), Some(2));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = load_edge_list("1 2\n3 x\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = load_edge_list("1 2\n3\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn empty_input_is_empty_graph() {
        let g = load_edge_list("".as_bytes()).unwrap();
        assert_eq!((g.n(), g.m()), (0, 0));
    }

    #[test]
    fn isolated_self_loop_node_is_kept() {
        let g = load_edge_list("1 2\n7 7\n".as_bytes()).unwrap();
        assert_eq!((g.n(), g.m()), (3, 1));
        assert_eq!(g.labels(), &[1, 2, 7]);
        g.validate().unwrap();
    }

    #[test]
    fn triangle_chain_fixture_has_nine_nodes_fifteen_edges() {
        let g = fixtures::triangle_chain();
        assert_eq!((g.n(), g.m()), (9, 15));
        g.validate().unwrap();
    }

    #[test]
    fn insert_and_delete_report_change() {
        let mut g = fixtures::dangling_path();
        let (v5, v6, v7) = (
            g.node_of_label(5).unwrap(),
            g.node_of_label(6).unwrap(),
            g.node_of_label(7).unwrap(),
        );
        let m = g.m();
        assert!(!g.insert_edge(v5, v6).unwrap());
        assert_eq!(g.m(), m);
        assert!(g.insert_edge(v5, v7).unwrap());
        assert_eq!(g.m(), m + 1);
        assert!(g.has_edge(v7, v5));
        g.validate().unwrap();
        assert!(g.delete_edge(v7, v5).unwrap());
        assert!(!g.delete_edge(v7, v5).unwrap());
        assert_eq!(g.m(), m);
        g.validate().unwrap();
    }

    #[test]
    fn self_loop_and_range_rejected() {
        let mut g = Graph::new(3);
        assert!(matches!(g.insert_edge(1, 1), Err(Error::SelfLoop(1))));
        assert!(matches!(
            g.delete_edge(0, 5),
            Err(Error::NodeOutOfRange { node: 5, .. })
        ));
    }

    #[test]
    fn label_map_export() {
        let g = load_edge_list("5 9\n".as_bytes()).unwrap();
        let mut buf = Vec::new();
        g.write_label_map(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "0 5\n1 9\n");
    }
}
