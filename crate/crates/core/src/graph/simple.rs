use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};

use super::components::Components;

/// Simple undirected graph on vertices 0..n. Self-loops are rejected.
///
/// An optional multiplicity map turns the value into a multigraph view:
/// `edges` then holds the distinct parallel classes and the map carries the
/// class sizes. Analyses (components, planarity, genus bounds) operate on
/// the simple support; parallel edges change none of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
    multiplicity: Option<BTreeMap<(u32, u32), u64>>,
}

impl SimpleGraph {
    pub fn new(n: usize, edge_list: Vec<(u32, u32)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edge_list.len());
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(a, b) in &edge_list {
            if a == b {
                return Err(Error::SelfLoop(a as usize));
            }
            if a as usize >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: a as usize,
                    size: n,
                });
            }
            if b as usize >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: b as usize,
                    size: n,
                });
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge {
                    u: key.0 as usize,
                    w: key.1 as usize,
                });
            }
            edges.push(key);
        }
        Ok(Self::from_unique_edges(n, edges))
    }

    /// Edges must be distinct, in-range, self-loop free, and normalized to
    /// (min, max).
    pub(crate) fn from_unique_edges(n: usize, edges: Vec<(u32, u32)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        Self {
            n,
            edges,
            adj,
            multiplicity: None,
        }
    }

    /// Attaches parallel-edge multiplicities (each present edge maps to its
    /// class size, at least 1).
    pub fn with_multiplicities(mut self, mult: BTreeMap<(u32, u32), u64>) -> Self {
        debug_assert!(mult
            .keys()
            .all(|k| self.adj[k.0 as usize].binary_search(&k.1).is_ok()));
        self.multiplicity = Some(mult);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Distinct edge count (parallel classes counted once).
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges normalized as (min, max), insertion order.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Degree counting parallel edges when a multiplicity map is present.
    pub fn degree_with_multiplicity(&self, v: usize) -> u64 {
        match &self.multiplicity {
            None => self.adj[v].len() as u64,
            Some(m) => self.adj[v]
                .iter()
                .map(|&u| {
                    let key = ((v as u32).min(u), (v as u32).max(u));
                    *m.get(&key).unwrap_or(&1)
                })
                .sum(),
        }
    }

    /// Edge count with multiplicity.
    pub fn edge_count_with_multiplicity(&self) -> u64 {
        match &self.multiplicity {
            None => self.edges.len() as u64,
            Some(m) => self.edges.iter().map(|e| *m.get(e).unwrap_or(&1)).sum(),
        }
    }

    pub fn multiplicities(&self) -> Option<&BTreeMap<(u32, u32), u64>> {
        self.multiplicity.as_ref()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&(b as u32)).is_ok()
    }

    pub fn components(&self) -> Components {
        Components::of_simple(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_edge_orientation() {
        let g = SimpleGraph::new(3, vec![(2, 0), (1, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2), (1, 2)]);
        assert!(g.has_edge(0, 2));
        assert!(g.has_edge(2, 0));
        assert!(!g.has_edge(0, 1));
    }

    #[test]
    fn rejects_self_loop_and_duplicates() {
        assert!(matches!(
            SimpleGraph::new(2, vec![(1, 1)]).unwrap_err(),
            Error::SelfLoop(1)
        ));
        assert!(matches!(
            SimpleGraph::new(3, vec![(0, 1), (1, 0)]).unwrap_err(),
            Error::DuplicateEdge { u: 0, w: 1 }
        ));
    }

    #[test]
    fn multiplicity_degree_sum_is_twice_edge_sum() {
        let mut mult = BTreeMap::new();
        mult.insert((0, 1), 3);
        mult.insert((1, 2), 1);
        let g = SimpleGraph::new(3, vec![(0, 1), (1, 2)])
            .unwrap()
            .with_multiplicities(mult);
        let deg_sum: u64 = (0..3).map(|v| g.degree_with_multiplicity(v)).sum();
        assert_eq!(deg_sum, 2 * g.edge_count_with_multiplicity());
        assert_eq!(g.edge_count_with_multiplicity(), 4);
    }
}
