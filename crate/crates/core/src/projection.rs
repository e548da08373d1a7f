//! The 2-centre H of a bipartite graph: vertices are N1, and {x, y} is an
//! edge whenever some N2 vertex of degree exactly two is adjacent to both.
//! Along the way the construction records the quantities controlling how
//! far the genus of H can sit from the genus of G: the count Z of edges at
//! high-degree N2 vertices and the parallel-class histogram of the
//! intermediate multigraph.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::{BipartiteGraph, SimpleGraph};

/// Outcome of the 2-centre projection.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionReport {
    /// The 2-centre on vertices 0..n1 (isolated vertices kept).
    pub h: SimpleGraph,
    /// Number of G-edges incident to N2 vertices of degree >= 3.
    pub z_count: u64,
    /// parallel-class size -> number of classes of that size, taken over
    /// the multigraph stage (one parallel edge per degree-2 centre).
    pub multiplicity_histogram: BTreeMap<u64, u64>,
    /// N2 vertices of degree 0 or 1.
    pub v1_count: usize,
    /// N2 vertices of degree >= 3.
    pub v2_count: usize,
}

/// Serializable view of the projection counters (the graph itself travels
/// through the graph file format).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProjectionSummary {
    pub n1: usize,
    pub n2: usize,
    pub h_edge_count: usize,
    pub z_count: u64,
    pub multiplicity_histogram: BTreeMap<u64, u64>,
    pub v1_count: usize,
    pub v2_count: usize,
}

impl ProjectionReport {
    pub fn summary(&self, g: &BipartiteGraph) -> ProjectionSummary {
        ProjectionSummary {
            n1: g.n1(),
            n2: g.n2(),
            h_edge_count: self.h.edge_count(),
            z_count: self.z_count,
            multiplicity_histogram: self.multiplicity_histogram.clone(),
            v1_count: self.v1_count,
            v2_count: self.v2_count,
        }
    }
}

/// Builds the 2-centre of `g`. Deterministic: H's edges come out in
/// lexicographic order.
///
/// ```
/// use bigenus::graph::build_bipartite;
/// use bigenus::projection::two_centre;
///
/// // x - z - y with deg(z) = 2 becomes the edge {x, y}
/// let g = build_bipartite(2, 1, vec![(0, 0), (1, 0)]).unwrap();
/// let rep = two_centre(&g);
/// assert_eq!(rep.h.edges(), &[(0, 1)]);
/// ```
pub fn two_centre(g: &BipartiteGraph) -> ProjectionReport {
    let mut v1_count = 0usize;
    let mut v2_count = 0usize;
    let mut z_count = 0u64;
    let mut classes: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for w in 0..g.n2() {
        match g.degree_n2(w) {
            0 | 1 => v1_count += 1,
            2 => {
                let nb = g.neighbors_of_n2(w);
                let (x, y) = (nb[0], nb[1]);
                // a degree-2 vertex with both edges to one N1 vertex would
                // need a parallel edge, which the graph type excludes
                assert!(x < y, "degree-2 centre with coincident neighbors");
                *classes.entry((x, y)).or_insert(0) += 1;
            }
            d => {
                v2_count += 1;
                z_count += d as u64;
            }
        }
    }
    let mut multiplicity_histogram: BTreeMap<u64, u64> = BTreeMap::new();
    for &m in classes.values() {
        *multiplicity_histogram.entry(m).or_insert(0) += 1;
    }
    let edges: Vec<(u32, u32)> = classes.keys().copied().collect();
    let h = SimpleGraph::from_unique_edges(g.n1(), edges);
    ProjectionReport {
        h,
        z_count,
        multiplicity_histogram,
        v1_count,
        v2_count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus::{exact_genus_small, exact_genus_small_bipartite};
    use crate::graph::build_bipartite;
    use crate::planarity::{is_planar, is_planar_bipartite};
    use crate::sampler::{sample_binomial_graph, sample_bipartite, SeedSpec};

    #[test]
    fn path_projects_to_single_edge() {
        let g = build_bipartite(2, 1, vec![(0, 0), (1, 0)]).unwrap();
        let rep = two_centre(&g);
        assert_eq!(rep.h.edges(), &[(0, 1)]);
        assert_eq!(rep.z_count, 0);
        assert_eq!(rep.multiplicity_histogram, BTreeMap::from([(1, 1)]));
        assert_eq!((rep.v1_count, rep.v2_count), (0, 0));
    }

    #[test]
    fn degree_three_centre_is_excluded() {
        let g = build_bipartite(3, 1, vec![(0, 0), (1, 0), (2, 0)]).unwrap();
        let rep = two_centre(&g);
        assert_eq!(rep.h.edge_count(), 0);
        assert_eq!(rep.h.vertex_count(), 3);
        assert_eq!(rep.z_count, 3);
        assert_eq!(rep.v2_count, 1);
    }

    #[test]
    fn parallel_classes_collapse() {
        // two degree-2 centres over the same pair {x, y}
        let g = build_bipartite(2, 2, vec![(0, 0), (1, 0), (0, 1), (1, 1)]).unwrap();
        let rep = two_centre(&g);
        assert_eq!(rep.h.edges(), &[(0, 1)]);
        assert_eq!(rep.multiplicity_histogram, BTreeMap::from([(2, 1)]));
    }

    #[test]
    fn low_degree_vertices_counted() {
        let g = build_bipartite(3, 4, vec![(0, 1), (0, 2), (1, 2)]).unwrap();
        let rep = two_centre(&g);
        // w=0 isolated, w=1 leaf, w=2 degree-2 centre, w=3 isolated
        assert_eq!(rep.v1_count, 3);
        assert_eq!(rep.v2_count, 0);
        assert_eq!(rep.h.edges(), &[(0, 1)]);
    }

    #[test]
    fn histogram_counts_equal_degree_two_centres_with_distinct_ends() {
        for t in 0..50u64 {
            let g = sample_bipartite(12, 40, 0.06, SeedSpec::new(808, t)).unwrap();
            let rep = two_centre(&g);
            let deg2 = (0..40).filter(|&w| g.degree_n2(w) == 2).count() as u64;
            let weighted: u64 = rep
                .multiplicity_histogram
                .iter()
                .map(|(size, count)| size * count)
                .sum();
            assert_eq!(weighted, deg2);
        }
    }

    #[test]
    fn projection_of_planar_graph_is_planar() {
        // H is a minor of G, so planarity must carry over
        for t in 0..300u64 {
            let g = sample_bipartite(8, 20, 0.05, SeedSpec::new(909, t)).unwrap();
            if is_planar_bipartite(&g) {
                let rep = two_centre(&g);
                assert!(is_planar(&rep.h));
            }
        }
    }

    #[test]
    fn genus_sandwich_on_small_instances() {
        // g(H) <= g(G) <= g(H) + Z when everything is small enough for
        // the exact oracle
        let mut checked = 0;
        let mut t = 0u64;
        while checked < 200 {
            t += 1;
            let g = sample_bipartite(5, 10, 0.18, SeedSpec::new(1212, t)).unwrap();
            if g.edge_count() > 13 {
                continue;
            }
            let rep = two_centre(&g);
            let (Ok(gg), Ok(gh)) = (exact_genus_small_bipartite(&g), exact_genus_small(&rep.h))
            else {
                continue;
            };
            checked += 1;
            assert!(gh <= gg, "minor with larger genus");
            assert!(gg <= gh + rep.z_count, "genus gap exceeded Z");
        }
    }

    #[test]
    fn edge_marginal_matches_q() {
        // In the unbalanced regime P({x, y} in H) = (1 +- 0.1) p^2 n2.
        let (n1, n2, d) = (24usize, 100_000usize, 1.2f64);
        let p = d / ((n1 * n2) as f64).sqrt();
        let q = p * p * n2 as f64;
        let trials = 300u64;
        let mut hits = 0u64;
        for t in 0..trials {
            let g = sample_bipartite(n1, n2, p, SeedSpec::new(2024_12, t)).unwrap();
            hits += two_centre(&g).h.edge_count() as u64;
        }
        let pairs = (n1 * (n1 - 1) / 2) as f64;
        let observed = hits as f64 / (trials as f64 * pairs);
        let ratio = observed / q;
        assert!(
            (0.9..=1.1).contains(&ratio),
            "edge marginal ratio {ratio} (observed {observed}, q {q})"
        );
    }

    #[test]
    fn monotone_statistics_dominated_by_binomial_neighbors() {
        // edge count, max degree, and triangle count of H sit between the
        // same statistics of G(n1, 0.9 q) and G(n1, 1.1 q) in mean.
        let (n1, n2, d) = (24usize, 100_000usize, 1.2f64);
        let p = d / ((n1 * n2) as f64).sqrt();
        let q = p * p * n2 as f64;
        let trials = 300usize;
        let mut stats_h = vec![Vec::new(); 3];
        let mut stats_lo = vec![Vec::new(); 3];
        let mut stats_hi = vec![Vec::new(); 3];
        let collect = |g: &SimpleGraph, out: &mut [Vec<f64>]| {
            out[0].push(g.edge_count() as f64);
            let maxdeg = (0..g.vertex_count())
                .map(|v| g.degree(v))
                .max()
                .unwrap_or(0);
            out[1].push(maxdeg as f64);
            let mut tri = 0u64;
            for a in 0..g.vertex_count() {
                for &b in g.neighbors(a) {
                    if (b as usize) <= a {
                        continue;
                    }
                    for &c in g.neighbors(b as usize) {
                        if (c as usize) > b as usize && g.has_edge(a, c as usize) {
                            tri += 1;
                        }
                    }
                }
            }
            out[2].push(tri as f64);
        };
        for t in 0..trials as u64 {
            let g = sample_bipartite(n1, n2, p, SeedSpec::new(515, t)).unwrap();
            collect(&two_centre(&g).h, &mut stats_h);
            let lo = sample_binomial_graph(n1, 0.9 * q, SeedSpec::new(515 ^ 0xA5A5, t)).unwrap();
            collect(&lo, &mut stats_lo);
            let hi = sample_binomial_graph(n1, 1.1 * q, SeedSpec::new(515 ^ 0x5A5A, t)).unwrap();
            collect(&hi, &mut stats_hi);
        }
        let mean_se = |v: &[f64]| {
            let n = v.len() as f64;
            let mean = v.iter().sum::<f64>() / n;
            let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
            (mean, (var / n).sqrt())
        };
        for (i, name) in ["edges", "max_degree", "triangles"].iter().enumerate() {
            let (mh, seh) = mean_se(&stats_h[i]);
            let (ml, sel) = mean_se(&stats_lo[i]);
            let (mu, seu) = mean_se(&stats_hi[i]);
            let lo_slack = 3.0 * (seh * seh + sel * sel).sqrt();
            let hi_slack = 3.0 * (seh * seh + seu * seu).sqrt();
            assert!(
                mh >= ml - lo_slack && mh <= mu + hi_slack,
                "{name}: H mean {mh} outside [{ml} - {lo_slack}, {mu} + {hi_slack}]"
            );
        }
    }

    #[test]
    fn z_moment_bounded() {
        // mean Z <= 1.1 p^3 n1^3 n2 in the unbalanced regime
        let (n1, n2, d) = (100usize, 20_000usize, 1.5f64);
        let p = d / ((n1 * n2) as f64).sqrt();
        let trials = 100u64;
        let mut total = 0u64;
        for t in 0..trials {
            let g = sample_bipartite(n1, n2, p, SeedSpec::new(717, t)).unwrap();
            total += two_centre(&g).z_count;
        }
        let mean = total as f64 / trials as f64;
        let bound = 1.1 * p.powi(3) * (n1 as f64).powi(3) * n2 as f64;
        assert!(mean <= bound, "mean Z {mean} above {bound}");
    }
}
