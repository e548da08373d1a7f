use serde::{Deserialize, Serialize};

use super::{BipartiteGraph, SimpleGraph};

/// Component class by excess (edges - vertices + 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentClass {
    /// excess 0
    Tree,
    /// excess 1
    Unicyclic,
    /// excess >= 2
    Complex,
}

/// Per-component record. `is_small` / `is_balanced` are filled by the
/// structure classifier; plain connectivity analysis leaves them false.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub id: usize,
    /// |C ∩ N1| (all vertices for a simple graph).
    pub verts_n1: usize,
    /// |C ∩ N2| (zero for a simple graph).
    pub verts_n2: usize,
    pub edge_count: usize,
    /// edge_count - (verts_n1 + verts_n2) + 1; non-negative for a
    /// connected component.
    pub excess: usize,
    pub class: ComponentClass,
    pub is_small: bool,
    pub is_balanced: bool,
}

impl ComponentSummary {
    pub fn vertex_count(&self) -> usize {
        self.verts_n1 + self.verts_n2
    }
}

/// Materialized component decomposition: per-vertex component ids (flat
/// index space) plus one summary per component. Computed once per graph
/// and reused by the analyzers.
#[derive(Debug, Clone)]
pub struct Components {
    /// Component id of each flat vertex, 0..kappa.
    pub comp_of: Vec<u32>,
    pub summaries: Vec<ComponentSummary>,
}

impl Components {
    pub fn kappa(&self) -> usize {
        self.summaries.len()
    }

    pub(crate) fn of_bipartite(g: &BipartiteGraph) -> Self {
        let n1 = g.n1();
        let n = g.vertex_count();
        let mut uf = UnionFind::new(n);
        for &(u, w) in g.edges() {
            uf.union(u as usize, n1 + w as usize);
        }
        Self::from_union_find(
            uf,
            n,
            n1,
            g.edge_count(),
            |e| {
                let (u, w) = *e;
                (u as usize, n1 + w as usize)
            },
            g.edges(),
        )
    }

    pub(crate) fn of_simple(g: &SimpleGraph) -> Self {
        let n = g.vertex_count();
        let mut uf = UnionFind::new(n);
        for &(a, b) in g.edges() {
            uf.union(a as usize, b as usize);
        }
        Self::from_union_find(
            uf,
            n,
            n,
            g.edge_count(),
            |e| {
                let (a, b) = *e;
                (a as usize, b as usize)
            },
            g.edges(),
        )
    }

    fn from_union_find<E, F: Fn(&E) -> (usize, usize)>(
        mut uf: UnionFind,
        n: usize,
        n1: usize,
        edge_count: usize,
        flat: F,
        edges: &[E],
    ) -> Self {
        // Assign component ids in order of smallest contained flat vertex.
        let mut comp_of = vec![u32::MAX; n];
        let mut root_to_id = vec![u32::MAX; n];
        let mut summaries: Vec<ComponentSummary> = Vec::new();
        for v in 0..n {
            let r = uf.find(v);
            let id = if root_to_id[r] == u32::MAX {
                let id = summaries.len() as u32;
                root_to_id[r] = id;
                summaries.push(ComponentSummary {
                    id: id as usize,
                    verts_n1: 0,
                    verts_n2: 0,
                    edge_count: 0,
                    excess: 0,
                    class: ComponentClass::Tree,
                    is_small: false,
                    is_balanced: false,
                });
                id
            } else {
                root_to_id[r]
            };
            comp_of[v] = id;
            let s = &mut summaries[id as usize];
            if v < n1 {
                s.verts_n1 += 1;
            } else {
                s.verts_n2 += 1;
            }
        }
        for e in edges {
            let (a, _b) = flat(e);
            summaries[comp_of[a] as usize].edge_count += 1;
        }
        let mut total_edges = 0;
        for s in summaries.iter_mut() {
            let verts = s.verts_n1 + s.verts_n2;
            debug_assert!(s.edge_count + 1 >= verts, "component not connected");
            s.excess = s.edge_count + 1 - verts;
            s.class = match s.excess {
                0 => ComponentClass::Tree,
                1 => ComponentClass::Unicyclic,
                _ => ComponentClass::Complex,
            };
            total_edges += s.edge_count;
        }
        debug_assert_eq!(total_edges, edge_count);
        Self { comp_of, summaries }
    }
}

/// Union-find with path compression and union by size.
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut x = x as u32;
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x as usize
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let mut ra = self.find(a);
        let mut rb = self.find(b);
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
    }
}

/// Connected components of a bipartite graph in deterministic order.
pub fn connected_components_bipartite(g: &BipartiteGraph) -> Vec<ComponentSummary> {
    g.components().summaries
}

/// Connected components of a simple graph in deterministic order.
pub fn connected_components_simple(g: &SimpleGraph) -> Vec<ComponentSummary> {
    g.components().summaries
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_bipartite;

    fn complete_bipartite(a: usize, b: usize) -> BipartiteGraph {
        let mut edges = Vec::new();
        for u in 0..a {
            for w in 0..b {
                edges.push((u as u32, w as u32));
            }
        }
        build_bipartite(a, b, edges).unwrap()
    }

    #[test]
    fn k33_is_one_complex_component() {
        let comps = connected_components_bipartite(&complete_bipartite(3, 3));
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].excess, 9 - 6 + 1);
        assert_eq!(comps[0].class, ComponentClass::Complex);
    }

    #[test]
    fn four_cycle_plus_isolated() {
        // 4-cycle on (2,2) plus an isolated N2 vertex.
        let g = build_bipartite(2, 3, vec![(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let comps = connected_components_bipartite(&g);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].class, ComponentClass::Unicyclic);
        assert_eq!(comps[0].excess, 1);
        assert_eq!(comps[1].class, ComponentClass::Tree);
        assert_eq!(comps[1].vertex_count(), 1);
    }

    #[test]
    fn empty_graph_components() {
        let g = build_bipartite(3, 2, vec![]).unwrap();
        let comps = connected_components_bipartite(&g);
        assert_eq!(comps.len(), 5);
        assert!(comps.iter().all(|c| c.class == ComponentClass::Tree));
        assert!(comps.iter().all(|c| c.vertex_count() == 1));
    }

    #[test]
    fn deterministic_ordering_by_smallest_flat_vertex() {
        // Component containing N1 vertex 0 must come first even if built last.
        let g = build_bipartite(3, 3, vec![(2, 2), (0, 0), (1, 1)]).unwrap();
        let c = g.components();
        assert_eq!(c.comp_of[0], 0);
        assert_eq!(c.comp_of[1], 1);
        assert_eq!(c.comp_of[2], 2);
        // N2 vertex 0 sits with N1 vertex 0.
        assert_eq!(c.comp_of[3], 0);
    }

    #[test]
    fn cycle_rank_identity() {
        // sum of excess over components = e - v + kappa, exactly.
        let g = build_bipartite(
            4,
            4,
            vec![
                (0, 0),
                (0, 1),
                (1, 0),
                (1, 1),
                (2, 2),
                (2, 3),
                (3, 2),
                (3, 3),
                (0, 2),
            ],
        )
        .unwrap();
        let comps = connected_components_bipartite(&g);
        let excess_sum: usize = comps.iter().map(|c| c.excess).sum();
        let e = g.edge_count();
        let v = g.vertex_count();
        let kappa = comps.len();
        assert_eq!(excess_sum as i64, e as i64 - v as i64 + kappa as i64);
    }

    #[test]
    fn vertex_counts_partition() {
        let g = build_bipartite(5, 7, vec![(0, 0), (1, 2), (4, 6)]).unwrap();
        let comps = connected_components_bipartite(&g);
        let total: usize = comps.iter().map(|c| c.vertex_count()).sum();
        assert_eq!(total, g.vertex_count());
    }
}
