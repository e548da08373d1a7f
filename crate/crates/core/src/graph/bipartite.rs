use std::collections::HashSet;

use crate::error::{Error, Result};

use super::components::Components;

/// Simple bipartite graph with partition classes N1 (size `n1`) and
/// N2 (size `n2`). Every edge joins an N1 vertex to an N2 vertex.
///
/// Edges are stored in insertion order (the serialization round-trips
/// byte-exactly); adjacency lists are kept sorted for deterministic
/// traversal and binary-search membership tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n1: usize,
    n2: usize,
    edges: Vec<(u32, u32)>,
    adj_n1: Vec<Vec<u32>>,
    adj_n2: Vec<Vec<u32>>,
}

/// Builds a bipartite graph, rejecting out-of-range endpoints and
/// duplicate edges.
pub fn build_bipartite(n1: usize, n2: usize, edge_list: Vec<(u32, u32)>) -> Result<BipartiteGraph> {
    BipartiteGraph::new(n1, n2, edge_list)
}

impl BipartiteGraph {
    pub fn new(n1: usize, n2: usize, edge_list: Vec<(u32, u32)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edge_list.len());
        for &(u, w) in &edge_list {
            if u as usize >= n1 {
                return Err(Error::VertexOutOfRange {
                    vertex: u as usize,
                    size: n1,
                });
            }
            if w as usize >= n2 {
                return Err(Error::VertexOutOfRange {
                    vertex: w as usize,
                    size: n2,
                });
            }
            if !seen.insert((u, w)) {
                return Err(Error::DuplicateEdge {
                    u: u as usize,
                    w: w as usize,
                });
            }
        }
        Ok(Self::from_unique_edges(n1, n2, edge_list))
    }

    /// Construction path for callers that guarantee validity (the samplers
    /// emit in-range, strictly increasing edge indices).
    pub(crate) fn from_unique_edges(n1: usize, n2: usize, edges: Vec<(u32, u32)>) -> Self {
        let mut adj_n1 = vec![Vec::new(); n1];
        let mut adj_n2 = vec![Vec::new(); n2];
        for &(u, w) in &edges {
            adj_n1[u as usize].push(w);
            adj_n2[w as usize].push(u);
        }
        for list in adj_n1.iter_mut().chain(adj_n2.iter_mut()) {
            list.sort_unstable();
        }
        Self {
            n1,
            n2,
            edges,
            adj_n1,
            adj_n2,
        }
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Total vertex count n1 + n2.
    pub fn vertex_count(&self) -> usize {
        self.n1 + self.n2
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as (u in N1, w in N2) pairs, in insertion order.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// N2 neighbors of N1 vertex `u`, sorted.
    pub fn neighbors_of_n1(&self, u: usize) -> &[u32] {
        &self.adj_n1[u]
    }

    /// N1 neighbors of N2 vertex `w`, sorted.
    pub fn neighbors_of_n2(&self, w: usize) -> &[u32] {
        &self.adj_n2[w]
    }

    pub fn degree_n1(&self, u: usize) -> usize {
        self.adj_n1[u].len()
    }

    pub fn degree_n2(&self, w: usize) -> usize {
        self.adj_n2[w].len()
    }

    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        self.adj_n1[u].binary_search(&(w as u32)).is_ok()
    }

    /// Flat index of N2 vertex `w` in the combined 0..n1+n2 space.
    pub fn flat_n2(&self, w: usize) -> usize {
        self.n1 + w
    }

    /// Connected components with deterministic ordering (by smallest
    /// contained flat vertex index; N1 indices precede N2).
    pub fn components(&self) -> Components {
        Components::of_bipartite(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn complete_bipartite(a: usize, b: usize) -> BipartiteGraph {
        let mut edges = Vec::new();
        for u in 0..a {
            for w in 0..b {
                edges.push((u as u32, w as u32));
            }
        }
        BipartiteGraph::new(a, b, edges).unwrap()
    }

    #[test]
    fn k22_has_all_degrees_two() {
        let g = BipartiteGraph::new(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(g.edge_count(), 4);
        for u in 0..2 {
            assert_eq!(g.degree_n1(u), 2);
            assert_eq!(g.degree_n2(u), 2);
        }
    }

    #[test]
    fn empty_graph_is_isolated_vertices() {
        let g = BipartiteGraph::new(3, 2, vec![]).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.vertex_count(), 5);
    }

    #[test]
    fn duplicate_edge_rejected() {
        let err = BipartiteGraph::new(1, 1, vec![(0, 0), (0, 0)]).unwrap_err();
        assert!(matches!(err, Error::DuplicateEdge { u: 0, w: 0 }));
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(
            BipartiteGraph::new(2, 2, vec![(2, 0)]).unwrap_err(),
            Error::VertexOutOfRange { vertex: 2, size: 2 }
        ));
        assert!(matches!(
            BipartiteGraph::new(2, 2, vec![(0, 5)]).unwrap_err(),
            Error::VertexOutOfRange { vertex: 5, size: 2 }
        ));
    }

    #[test]
    fn degree_sums_match_edge_count() {
        let g = complete_bipartite(3, 4);
        let s1: usize = (0..3).map(|u| g.degree_n1(u)).sum();
        let s2: usize = (0..4).map(|w| g.degree_n2(w)).sum();
        assert_eq!(s1, g.edge_count());
        assert_eq!(s2, g.edge_count());
    }
}
