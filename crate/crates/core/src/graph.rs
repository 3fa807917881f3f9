//! Simple undirected labeled graphs.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Simple undirected graph with labeled nodes. Adjacency lists are kept
/// sorted, so iteration order is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyGraph {
    labels: Vec<String>,
    adjacency: Vec<Vec<usize>>,
}

impl PolyGraph {
    pub fn new(labels: Vec<String>) -> Self {
        let n = labels.len();
        PolyGraph { labels, adjacency: vec![Vec::new(); n] }
    }

    /// Graph with nodes labeled `1..=n`.
    pub fn with_nodes(n: usize) -> Self {
        PolyGraph::new((1..=n).map(|i| i.to_string()).collect())
    }

    pub fn from_edges(labels: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = PolyGraph::new(labels);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Adds `{u, v}`. Loops and duplicates are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.len() && v < self.len(), "edge endpoint out of range");
        if u == v {
            return;
        }
        for (a, b) in [(u, v), (v, u)] {
            if let Err(pos) = self.adjacency[a].binary_search(&b) {
                self.adjacency[a].insert(pos, b);
            }
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edge set as unordered label pairs, each pair sorted.
    pub fn labeled_edges(&self) -> BTreeSet<(String, String)> {
        self.edges()
            .map(|(u, v)| {
                let (a, b) = (self.labels[u].clone(), self.labels[v].clone());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect()
    }

    /// Subgraph induced on `keep` (in the given order).
    pub fn induced(&self, keep: &[usize]) -> PolyGraph {
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &k) in keep.iter().enumerate() {
            pos[k] = i;
        }
        let mut g = PolyGraph::new(keep.iter().map(|&k| self.labels[k].clone()).collect());
        for (u, v) in self.edges() {
            if pos[u] != usize::MAX && pos[v] != usize::MAX {
                g.add_edge(pos[u], pos[v]);
            }
        }
        g
    }
}
