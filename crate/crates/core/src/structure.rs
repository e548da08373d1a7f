//! Component classification and the structural observables: kappa counts,
//! small/balanced flags, N1-to-N1 2-path counts, and short-cycle
//! enumeration.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, ComponentClass, ComponentSummary, Components};

/// Constants for the small/balanced component classification. The theory
/// only asserts that suitable positive constants exist; these defaults are
/// a calibration choice and both are configurable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifierThresholds {
    pub beta0: f64,
    pub beta1: f64,
    pub balance_factor: f64,
}

impl Default for ClassifierThresholds {
    fn default() -> Self {
        Self {
            beta0: 1.0,
            beta1: 1.0,
            balance_factor: 2.0,
        }
    }
}

impl ClassifierThresholds {
    fn validate(&self) -> Result<()> {
        if self.beta0 <= 0.0 || self.beta1 <= 0.0 || self.balance_factor <= 0.0 {
            return Err(Error::Config(
                "classifier thresholds must be strictly positive".into(),
            ));
        }
        Ok(())
    }

    /// Small means |C ∩ N1| <= beta0 * (ln n1)^2.
    pub fn small_cutoff(&self, n1: usize) -> f64 {
        let l = (n1 as f64).ln();
        self.beta0 * l * l
    }

    /// Upper end of the forbidden window, beta1 * sqrt(n1 ln n1).
    pub fn gap_cutoff(&self, n1: usize) -> f64 {
        let n1 = n1 as f64;
        self.beta1 * (n1 * n1.ln()).sqrt()
    }
}

/// Whole-graph structural summary. Field names are the serialization
/// contract for `analyze --json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub kappa: usize,
    /// Components of order one.
    pub kappa_isolated: usize,
    pub kappa_tree: usize,
    pub kappa_unicyclic: usize,
    pub kappa_complex: usize,
    pub kappa_small_balanced_tree: usize,
    pub largest_n1_intersection: usize,
    pub second_largest_n1_intersection: usize,
    /// Number of 2-paths with both endpoints in N1, sum over w of
    /// C(deg(w), 2).
    pub s_paths: u64,
    pub edge_count: usize,
    pub vertex_count: usize,
}

/// Classifies every component of `g` (tree / unicyclic / complex plus the
/// small and balanced flags) and assembles the structure report.
///
/// ```
/// use bigenus::graph::build_bipartite;
/// use bigenus::structure::classify_components;
///
/// // a 4-cycle: one unicyclic component
/// let g = build_bipartite(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
/// let (_, report) = classify_components(&g, 1.0, &Default::default()).unwrap();
/// assert_eq!(report.kappa, 1);
/// assert_eq!(report.kappa_unicyclic, 1);
/// ```
pub fn classify_components(
    g: &BipartiteGraph,
    p: f64,
    th: &ClassifierThresholds,
) -> Result<(Vec<ComponentSummary>, StructureReport)> {
    if g.n1() < 2 {
        return Err(Error::Config("classification needs n1 >= 2".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityRange(p));
    }
    th.validate()?;
    let comps = g.components();
    Ok(classify_materialized(g, &comps, p, th))
}

/// Classification over an existing component decomposition, for callers
/// that reuse `Components` across analyzers.
pub fn classify_materialized(
    g: &BipartiteGraph,
    comps: &Components,
    p: f64,
    th: &ClassifierThresholds,
) -> (Vec<ComponentSummary>, StructureReport) {
    let small_cutoff = th.small_cutoff(g.n1());
    let mut summaries = comps.summaries.clone();
    let mut kappa_isolated = 0;
    let mut kappa_tree = 0;
    let mut kappa_unicyclic = 0;
    let mut kappa_complex = 0;
    let mut kappa_small_balanced_tree = 0;
    let mut largest = 0usize;
    let mut second = 0usize;
    for s in summaries.iter_mut() {
        s.is_small = (s.verts_n1 as f64) <= small_cutoff;
        // Components not meeting N1 are exactly the isolated N2 vertices;
        // the balance ratio is vacuous for them and they count as
        // balanced (the tree-component expectation includes them).
        s.is_balanced = s.verts_n1 == 0
            || (s.verts_n2 as f64) <= th.balance_factor * p * g.n2() as f64 * s.verts_n1 as f64;
        match s.class {
            ComponentClass::Tree => kappa_tree += 1,
            ComponentClass::Unicyclic => kappa_unicyclic += 1,
            ComponentClass::Complex => kappa_complex += 1,
        }
        if s.vertex_count() == 1 {
            kappa_isolated += 1;
        }
        if s.class == ComponentClass::Tree && s.is_small && s.is_balanced {
            kappa_small_balanced_tree += 1;
        }
        if s.verts_n1 >= largest {
            second = largest;
            largest = s.verts_n1;
        } else if s.verts_n1 > second {
            second = s.verts_n1;
        }
    }
    let s_paths = (0..g.n2())
        .map(|w| {
            let d = g.degree_n2(w) as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum();
    let report = StructureReport {
        kappa: summaries.len(),
        kappa_isolated,
        kappa_tree,
        kappa_unicyclic,
        kappa_complex,
        kappa_small_balanced_tree,
        largest_n1_intersection: largest,
        second_largest_n1_intersection: second,
        s_paths,
        edge_count: g.edge_count(),
        vertex_count: g.vertex_count(),
    };
    (summaries, report)
}

/// Default ceiling on visited DFS states during cycle enumeration.
pub const DEFAULT_CYCLE_WORK_LIMIT: u64 = 100_000_000;

/// Counts the distinct cycles (as edge sets) of each even length 4..=2j.
///
/// Each cycle is enumerated exactly once: the DFS roots at the cycle's
/// smallest N1 vertex and of the two traversal directions keeps the one
/// whose first N2 vertex is smaller than its last.
pub fn count_short_cycles(g: &BipartiteGraph, j: usize) -> Result<BTreeMap<usize, u64>> {
    count_short_cycles_masked(g, j, None, DEFAULT_CYCLE_WORK_LIMIT)
}

/// Cycle counting restricted to vertices whose component is enabled in
/// `mask` (flat component ids). `None` means the whole graph.
pub fn count_short_cycles_masked(
    g: &BipartiteGraph,
    j: usize,
    mask: Option<&CycleScope>,
    work_limit: u64,
) -> Result<BTreeMap<usize, u64>> {
    if j < 2 {
        return Err(Error::Config("cycle length bound j must be >= 2".into()));
    }
    let mut counts: BTreeMap<usize, u64> = (2..=j).map(|k| (2 * k, 0)).collect();
    let mut dfs = CycleDfs {
        g,
        max_depth: 2 * j - 1,
        on_path_n1: vec![false; g.n1()],
        on_path_n2: vec![false; g.n2()],
        visited: 0,
        work_limit,
        counts: &mut counts,
        scope: mask,
    };
    for root in 0..g.n1() {
        if let Some(scope) = mask {
            if !scope.active_n1[root] {
                continue;
            }
        }
        dfs.on_path_n1[root] = true;
        dfs.extend_from_n1(root, root as u32, 0, u32::MAX)?;
        dfs.on_path_n1[root] = false;
    }
    Ok(counts)
}

/// Per-side activity masks for restricting enumeration to chosen
/// components.
pub struct CycleScope {
    pub active_n1: Vec<bool>,
    pub active_n2: Vec<bool>,
}

impl CycleScope {
    /// Scope containing exactly the components classified complex.
    pub fn complex_components(g: &BipartiteGraph, comps: &Components) -> Self {
        let complex: Vec<bool> = comps
            .summaries
            .iter()
            .map(|s| s.class == ComponentClass::Complex)
            .collect();
        let active_n1 = (0..g.n1())
            .map(|u| complex[comps.comp_of[u] as usize])
            .collect();
        let active_n2 = (0..g.n2())
            .map(|w| complex[comps.comp_of[g.n1() + w] as usize])
            .collect();
        Self {
            active_n1,
            active_n2,
        }
    }
}

struct CycleDfs<'a> {
    g: &'a BipartiteGraph,
    max_depth: usize,
    on_path_n1: Vec<bool>,
    on_path_n2: Vec<bool>,
    visited: u64,
    work_limit: u64,
    counts: &'a mut BTreeMap<usize, u64>,
    scope: Option<&'a CycleScope>,
}

impl CycleDfs<'_> {
    fn bump(&mut self) -> Result<()> {
        self.visited += 1;
        if self.visited > self.work_limit {
            return Err(Error::WorkLimitExceeded {
                visited: self.visited,
                ceiling: self.work_limit,
            });
        }
        Ok(())
    }

    /// At an N1 vertex (`x`) at even depth; extends into N2.
    fn extend_from_n1(&mut self, root: usize, x: u32, depth: usize, first_w: u32) -> Result<()> {
        self.bump()?;
        if depth + 1 > self.max_depth {
            return Ok(());
        }
        for &w in self.g.neighbors_of_n1(x as usize) {
            if self.on_path_n2[w as usize] {
                continue;
            }
            if let Some(scope) = self.scope {
                if !scope.active_n2[w as usize] {
                    continue;
                }
            }
            let first_w = if depth == 0 { w } else { first_w };
            self.on_path_n2[w as usize] = true;
            self.extend_from_n2(root, w, depth + 1, first_w)?;
            self.on_path_n2[w as usize] = false;
        }
        Ok(())
    }

    /// At an N2 vertex (`w`) at odd depth; closes cycles back to the root
    /// and extends into N1.
    fn extend_from_n2(&mut self, root: usize, w: u32, depth: usize, first_w: u32) -> Result<()> {
        self.bump()?;
        // Cycle closes root -> ... -> w -> root; canonical direction has
        // first_w < w, and depth >= 3 rules out retracing the first edge.
        if depth >= 3 && w > first_w && self.g.has_edge(root, w as usize) {
            *self.counts.get_mut(&(depth + 1)).expect("length in range") += 1;
        }
        if depth + 1 > self.max_depth {
            return Ok(());
        }
        for &x in self.g.neighbors_of_n2(w as usize) {
            if x as usize <= root || self.on_path_n1[x as usize] {
                continue;
            }
            if let Some(scope) = self.scope {
                if !scope.active_n1[x as usize] {
                    continue;
                }
            }
            self.on_path_n1[x as usize] = true;
            self.extend_from_n1(root, x, depth + 1, first_w)?;
            self.on_path_n1[x as usize] = false;
        }
        Ok(())
    }
}

/// Result of the component-size gap check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapCheck {
    pub ok: bool,
    /// |C ∩ N1| values violating the check: every size inside the
    /// forbidden window, plus all oversized components beyond the first,
    /// ascending.
    pub offending: Vec<usize>,
}

/// Checks the supercritical component-size gap: at most one component may
/// meet N1 in more than beta1 * sqrt(n1 ln n1) vertices, and none may meet
/// it in [beta0 (ln n1)^2, beta1 sqrt(n1 ln n1)].
pub fn johansson_gap_check(
    summaries: &[ComponentSummary],
    n1: usize,
    th: &ClassifierThresholds,
) -> GapCheck {
    let lo = th.small_cutoff(n1);
    let hi = th.gap_cutoff(n1);
    let mut in_window: Vec<usize> = Vec::new();
    let mut above: Vec<usize> = Vec::new();
    for s in summaries {
        let k = s.verts_n1 as f64;
        if k > hi {
            above.push(s.verts_n1);
        } else if k >= lo {
            in_window.push(s.verts_n1);
        }
    }
    above.sort_unstable();
    if !above.is_empty() {
        above.pop(); // one oversized component is allowed
    }
    let mut offending = in_window;
    offending.extend(above);
    offending.sort_unstable();
    GapCheck {
        ok: offending.is_empty(),
        offending,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_bipartite;
    use crate::sampler::{sample_bipartite, SeedSpec};

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
    fn k22_is_unicyclic() {
        let g = complete_bipartite(2, 2);
        let (comps, report) = classify_components(&g, 1.0, &Default::default()).unwrap();
        assert_eq!(report.kappa, 1);
        assert_eq!(comps[0].excess, 1);
        assert_eq!(comps[0].class, ComponentClass::Unicyclic);
        assert_eq!(report.kappa_unicyclic, 1);
    }

    #[test]
    fn empty_graph_report() {
        let g = build_bipartite(5, 7, vec![]).unwrap();
        let (_, report) = classify_components(&g, 0.3, &Default::default()).unwrap();
        assert_eq!(report.kappa, 12);
        assert_eq!(report.kappa_tree, 12);
        assert_eq!(report.kappa_isolated, 12);
        assert_eq!(report.s_paths, 0);
        assert_eq!(report.largest_n1_intersection, 1);
    }

    #[test]
    fn single_path_is_balanced() {
        // x - z - y with n1 = 2, n2 = 1, p = 0.5:
        // balanced iff 1 <= 2 * 0.5 * 1 * 2 = 2.
        let g = build_bipartite(2, 1, vec![(0, 0), (1, 0)]).unwrap();
        let (comps, report) = classify_components(&g, 0.5, &Default::default()).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].verts_n1, 2);
        assert_eq!(comps[0].verts_n2, 1);
        assert_eq!(comps[0].class, ComponentClass::Tree);
        assert!(comps[0].is_balanced);
        assert_eq!(report.s_paths, 1);
    }

    #[test]
    fn kappa_splits_by_class() {
        // one 4-cycle, one path (tree), one K_{3,3} block
        let mut edges = vec![(0, 0), (0, 1), (1, 0), (1, 1)];
        edges.push((2, 2));
        for u in 3..6u32 {
            for w in 3..6u32 {
                edges.push((u, w));
            }
        }
        let g = build_bipartite(6, 6, edges).unwrap();
        let (_, report) = classify_components(&g, 0.5, &Default::default()).unwrap();
        assert_eq!(
            report.kappa,
            report.kappa_tree + report.kappa_unicyclic + report.kappa_complex
        );
        assert_eq!(report.kappa_unicyclic, 1);
        assert_eq!(report.kappa_complex, 1);
        assert_eq!(report.largest_n1_intersection, 3);
        assert_eq!(report.second_largest_n1_intersection, 2);
    }

    #[test]
    fn s_paths_matches_direct_enumeration() {
        // Direct count of paths x - w - y with x < y over small samples.
        for t in 0..20 {
            let g = sample_bipartite(8, 9, 0.25, SeedSpec::new(77, t)).unwrap();
            let mut direct = 0u64;
            for x in 0..8usize {
                for y in (x + 1)..8usize {
                    let a = g.neighbors_of_n1(x);
                    let b = g.neighbors_of_n1(y);
                    let mut i = 0;
                    let mut k = 0;
                    while i < a.len() && k < b.len() {
                        match a[i].cmp(&b[k]) {
                            std::cmp::Ordering::Less => i += 1,
                            std::cmp::Ordering::Greater => k += 1,
                            std::cmp::Ordering::Equal => {
                                direct += 1;
                                i += 1;
                                k += 1;
                            }
                        }
                    }
                }
            }
            let (_, report) = classify_components(&g, 0.25, &Default::default()).unwrap();
            assert_eq!(report.s_paths, direct);
        }
    }

    #[test]
    fn expected_s_paths_matches_moment() {
        // E(S) = C(n1, 2) p^2 n2; the empirical mean over 200 trials must
        // sit within 4 estimated standard errors.
        let (n1, n2, p) = (40usize, 60usize, 0.05f64);
        let trials = 200u64;
        let mut values = Vec::new();
        for t in 0..trials {
            let g = sample_bipartite(n1, n2, p, SeedSpec::new(555, t)).unwrap();
            let (_, report) = classify_components(&g, p, &Default::default()).unwrap();
            values.push(report.s_paths as f64);
        }
        let mean: f64 = values.iter().sum::<f64>() / trials as f64;
        let var: f64 =
            values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (trials as f64 - 1.0);
        let se = (var / trials as f64).sqrt();
        let expect = 780.0 * p * p * n2 as f64;
        assert!(
            (mean - expect).abs() <= 4.0 * se.max(1e-9),
            "mean {mean}, expected {expect}, se {se}"
        );
    }

    #[test]
    fn short_cycles_in_complete_bipartite_graphs() {
        let k22 = count_short_cycles(&complete_bipartite(2, 2), 2).unwrap();
        assert_eq!(k22, BTreeMap::from([(4, 1)]));

        // K_{2,3}: one 4-cycle per pair of N2 vertices.
        let k23 = count_short_cycles(&complete_bipartite(2, 3), 2).unwrap();
        assert_eq!(k23, BTreeMap::from([(4, 3)]));

        // K_{3,3}: 9 four-cycles and 6 six-cycles.
        let k33 = count_short_cycles(&complete_bipartite(3, 3), 3).unwrap();
        assert_eq!(k33, BTreeMap::from([(4, 9), (6, 6)]));
    }

    /// Brute-force cycle counter: for every subset of >= 4 vertices, checks
    /// whether the induced edges on an ordering form a cycle. Exponential;
    /// fine below ~14 vertices.
    fn brute_force_cycles(g: &BipartiteGraph, j: usize) -> BTreeMap<usize, u64> {
        let n = g.vertex_count();
        let n1 = g.n1();
        let adj = |a: usize, b: usize| -> bool {
            if a < n1 && b >= n1 {
                g.has_edge(a, b - n1)
            } else if b < n1 && a >= n1 {
                g.has_edge(b, a - n1)
            } else {
                false
            }
        };
        let mut counts: BTreeMap<usize, u64> = (2..=j).map(|k| (2 * k, 0)).collect();
        // enumerate simple cycles: pick the smallest vertex, extend paths
        let mut stack: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        while let Some(path) = stack.pop() {
            let root = path[0];
            let last = *path.last().unwrap();
            if path.len() >= 4 && path.len() % 2 == 0 && adj(last, root) && path[1] < last {
                if let Some(c) = counts.get_mut(&path.len()) {
                    *c += 1;
                }
            }
            if path.len() < 2 * j {
                for next in (root + 1)..n {
                    if !path.contains(&next) && adj(last, next) {
                        let mut p = path.clone();
                        p.push(next);
                        stack.push(p);
                    }
                }
            }
        }
        counts
    }

    #[test]
    fn cycle_counts_match_brute_force_on_random_graphs() {
        for t in 0..30 {
            let g = sample_bipartite(5, 6, 0.35, SeedSpec::new(4242, t)).unwrap();
            let fast = count_short_cycles(&g, 4).unwrap();
            let brute = brute_force_cycles(&g, 4);
            assert_eq!(fast, brute, "seed 4242 trial {t}");
        }
    }

    #[test]
    fn work_limit_is_enforced() {
        let g = complete_bipartite(6, 6);
        let err = count_short_cycles_masked(&g, 5, None, 10).unwrap_err();
        assert!(matches!(err, Error::WorkLimitExceeded { .. }));
    }

    #[test]
    fn gap_check_trivial_cases() {
        // empty graph: all components meet N1 in <= 1 vertex, window empty
        let g = build_bipartite(5, 5, vec![]).unwrap();
        let (comps, _) = classify_components(&g, 0.1, &Default::default()).unwrap();
        assert!(johansson_gap_check(&comps, 5, &Default::default()).ok);

        // complete bipartite: exactly one giant component
        let g = complete_bipartite(100, 40);
        let (comps, _) = classify_components(&g, 1.0, &Default::default()).unwrap();
        let check = johansson_gap_check(&comps, 100, &Default::default());
        assert!(check.ok, "offending: {:?}", check.offending);
    }

    #[test]
    fn gap_check_flags_window_sizes() {
        // n1 = 100: window is [ln^2 100, sqrt(100 ln 100)] = [21.2, 21.5).
        // A tree component meeting N1 in exactly 21 vertices falls inside
        // only for beta choices that stretch the window; use beta0 = 0.5
        // so the window is [10.6, 21.5] and 15 offends.
        let mut edges = Vec::new();
        for u in 0..15u32 {
            edges.push((u, 0));
        }
        let g = build_bipartite(100, 10, edges).unwrap();
        let th = ClassifierThresholds {
            beta0: 0.5,
            ..Default::default()
        };
        let (comps, _) = classify_components(&g, 0.01, &th).unwrap();
        let check = johansson_gap_check(&comps, 100, &th);
        assert!(!check.ok);
        assert_eq!(check.offending, vec![15]);
    }

    #[test]
    fn gap_check_allows_single_giant_only() {
        // Two oversized components: one is allowed, the second offends.
        let mut edges = Vec::new();
        for u in 0..40u32 {
            edges.push((u, 0));
        }
        for u in 40..90u32 {
            edges.push((u, 1));
        }
        let g = build_bipartite(100, 2, edges).unwrap();
        let (comps, _) = classify_components(&g, 0.01, &Default::default()).unwrap();
        let check = johansson_gap_check(&comps, 100, &Default::default());
        assert!(!check.ok);
        assert_eq!(check.offending, vec![40]);
    }

    /// Brute-force count of distinct simple cycles inside one component,
    /// by extending simple paths from each minimal vertex. Exponential;
    /// for witness checks on tiny graphs only.
    fn cycles_in_component(g: &BipartiteGraph, comp: &[usize]) -> u64 {
        let n1 = g.n1();
        let in_comp: std::collections::HashSet<usize> = comp.iter().copied().collect();
        let adj = |a: usize, b: usize| -> bool {
            if a < n1 && b >= n1 {
                g.has_edge(a, b - n1)
            } else if b < n1 && a >= n1 {
                g.has_edge(b, a - n1)
            } else {
                false
            }
        };
        let mut count = 0u64;
        let mut stack: Vec<Vec<usize>> = comp.iter().map(|&v| vec![v]).collect();
        while let Some(path) = stack.pop() {
            let root = path[0];
            let last = *path.last().unwrap();
            if path.len() >= 4 && adj(last, root) && path[1] < last {
                count += 1;
            }
            for &next in &in_comp {
                if next > root && !path.contains(&next) && adj(last, next) {
                    let mut p = path.clone();
                    p.push(next);
                    stack.push(p);
                }
            }
        }
        count
    }

    #[test]
    fn complex_witness_equivalence() {
        // a component has excess >= 2 exactly when it contains two
        // distinct cycles (the witness subgraphs: two cycles joined by a
        // path, sharing a vertex, or a cycle with a chord path)
        for t in 0..80u64 {
            let g = sample_bipartite(6, 6, 0.3, SeedSpec::new(321, t)).unwrap();
            let comps = g.components();
            let mut members: Vec<Vec<usize>> = vec![Vec::new(); comps.kappa()];
            for v in 0..g.vertex_count() {
                members[comps.comp_of[v] as usize].push(v);
            }
            for s in &comps.summaries {
                let cycles = cycles_in_component(&g, &members[s.id]);
                assert_eq!(
                    s.excess >= 2,
                    cycles >= 2,
                    "component with excess {} has {} cycles",
                    s.excess,
                    cycles
                );
                assert_eq!(s.excess == 1, cycles == 1);
            }
        }
    }

    #[test]
    fn witness_shapes_are_complex() {
        // theta: two N1-N1 four-paths plus a two-path between x0 and x1
        let theta = build_bipartite(
            3,
            4,
            vec![
                (0, 0),
                (1, 0),
                (0, 1),
                (2, 1),
                (2, 2),
                (1, 2),
                (0, 3),
                (1, 3),
            ],
        )
        .unwrap();
        let comps = theta.components();
        assert_eq!(comps.summaries[0].class, ComponentClass::Complex);

        // figure-8: two 4-cycles sharing N1 vertex 0
        let fig8 = build_bipartite(
            3,
            4,
            vec![
                (0, 0),
                (1, 0),
                (0, 1),
                (1, 1),
                (0, 2),
                (2, 2),
                (0, 3),
                (2, 3),
            ],
        )
        .unwrap();
        assert_eq!(
            fig8.components().summaries[0].class,
            ComponentClass::Complex
        );

        // dumbbell: two 4-cycles joined by a path
        let dumbbell = build_bipartite(
            4,
            5,
            vec![
                (0, 0),
                (1, 0),
                (0, 1),
                (1, 1),
                (1, 2),
                (2, 2),
                (2, 3),
                (3, 3),
                (2, 4),
                (3, 4),
            ],
        )
        .unwrap();
        assert_eq!(
            dumbbell.components().summaries[0].class,
            ComponentClass::Complex
        );

        // a unicyclic control: 4-cycle with a pendant tree
        let uni =
            build_bipartite(3, 3, vec![(0, 0), (1, 0), (0, 1), (1, 1), (2, 2), (0, 2)]).unwrap();
        assert_eq!(
            uni.components().summaries[0].class,
            ComponentClass::Unicyclic
        );
    }

    #[test]
    fn supercritical_gap_holds_with_high_probability() {
        // n1 = n2 = 10^4, d = 2: the giant is the only component past the
        // window and no component size lands inside it.
        let n = 10_000usize;
        let p = 2.0 / n as f64;
        let trials = 100u64;
        let mut ok = 0;
        for t in 0..trials {
            let g = sample_bipartite(n, n, p, SeedSpec::new(60601, t)).unwrap();
            let (comps, _) = classify_components(&g, p, &Default::default()).unwrap();
            if johansson_gap_check(&comps, n, &Default::default()).ok {
                ok += 1;
            }
        }
        assert!(ok >= 95, "gap check held in {ok}/100 trials");
    }
}
