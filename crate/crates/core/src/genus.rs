//! Orientable genus: certified per-instance intervals from Euler's formula
//! plus face-count bounds, and an exact rotation-system oracle for tiny
//! graphs.
//!
//! Genus is additive over components. Tree and unicyclic components are
//! planar and contribute zero exactly; only components of excess >= 2 need
//! bounds or search. The interval upper bound is sum of floor(excess / 2)
//! (one face per component in Euler's formula); the lower bound plugs a
//! face-count upper bound into Euler's formula. Faces of length at most 2j
//! are charged to the short cycles that bound them (at most two faces per
//! cycle); longer faces are charged to edge slots or to 2-paths with both
//! endpoints in N1 (at most two face boundaries per 2-path). Every face of
//! a complex bipartite component has length at least 4, which caps the
//! complex-part face count at floor(e/2).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    flatten_bipartite, BipartiteGraph, ComponentClass, ComponentSummary, Components, SimpleGraph,
};
use crate::structure::{count_short_cycles_masked, CycleScope, DEFAULT_CYCLE_WORK_LIMIT};

/// Default bound on the rotation-system search space of the exact oracle.
pub const DEFAULT_ROTATION_CEILING: f64 = 1e7;

/// Default j values over which the face bound is minimized.
pub const DEFAULT_J_RANGE: [usize; 4] = [2, 3, 4, 5];

/// Certified genus bounds for one graph instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenusInterval {
    pub lower: u64,
    pub upper: u64,
    /// Euler estimate (e - v + kappa) / 2, i.e. one face per component.
    pub point_estimate: f64,
    /// The minimized face-count upper bound actually used for `lower`.
    pub face_upper_bound: u64,
    /// The j attaining it.
    pub j_star: usize,
}

/// Sum of floor(excess / 2) over components: an upper bound on genus,
/// from Euler's formula with at least one face per component.
pub fn excess_upper_bound(summaries: &[ComponentSummary]) -> u64 {
    summaries.iter().map(|c| c.excess as u64 / 2).sum()
}

/// Genus upper bound of a simple graph.
pub fn genus_upper_bound_simple(g: &SimpleGraph) -> u64 {
    excess_upper_bound(&g.components().summaries)
}

/// Genus upper bound of a bipartite graph.
pub fn genus_upper_bound_bipartite(g: &BipartiteGraph) -> u64 {
    excess_upper_bound(&g.components().summaries)
}

/// Observed quantities feeding the face bound, all restricted to complex
/// components; cycle counts go up to length 2 * j_max.
#[derive(Debug, Clone)]
pub struct FaceBoundInputs {
    pub kappa_acyclic: u64,
    pub kappa_unicyclic: u64,
    pub edges_complex: u64,
    pub s_paths_complex: u64,
    /// cycle length (4, 6, ..) -> count within complex components
    pub cycle_counts: std::collections::BTreeMap<usize, u64>,
    pub j_max: usize,
}

impl FaceBoundInputs {
    pub fn compute(g: &BipartiteGraph, comps: &Components, j_max: usize) -> Result<Self> {
        Self::compute_with_limit(g, comps, j_max, DEFAULT_CYCLE_WORK_LIMIT)
    }

    pub fn compute_with_limit(
        g: &BipartiteGraph,
        comps: &Components,
        j_max: usize,
        work_limit: u64,
    ) -> Result<Self> {
        let mut kappa_acyclic = 0;
        let mut kappa_unicyclic = 0;
        let mut edges_complex = 0u64;
        for s in &comps.summaries {
            match s.class {
                ComponentClass::Tree => kappa_acyclic += 1,
                ComponentClass::Unicyclic => kappa_unicyclic += 1,
                ComponentClass::Complex => edges_complex += s.edge_count as u64,
            }
        }
        let scope = CycleScope::complex_components(g, comps);
        let s_paths_complex = (0..g.n2())
            .filter(|&w| scope.active_n2[w])
            .map(|w| {
                let d = g.degree_n2(w) as u64;
                d * d.saturating_sub(1) / 2
            })
            .sum();
        let cycle_counts = if edges_complex > 0 {
            count_short_cycles_masked(g, j_max, Some(&scope), work_limit)?
        } else {
            (2..=j_max).map(|k| (2 * k, 0)).collect()
        };
        Ok(Self {
            kappa_acyclic,
            kappa_unicyclic,
            edges_complex,
            s_paths_complex,
            cycle_counts,
            j_max,
        })
    }

    /// The face bound at a given j <= j_max.
    pub fn bound(&self, j: usize) -> u64 {
        assert!(j >= 2 && j <= self.j_max);
        let short: u64 = self
            .cycle_counts
            .iter()
            .filter(|(len, _)| **len <= 2 * j)
            .map(|(_, c)| *c)
            .sum::<u64>()
            .saturating_mul(2);
        let long = (2 * self.edges_complex).min(2 * self.s_paths_complex) / (j as u64 + 1);
        let complex_part = (short + long).min(self.edges_complex / 2);
        self.kappa_acyclic + 2 * self.kappa_unicyclic + complex_part
    }
}

/// Instance face-count upper bound at a single j.
pub fn face_upper_bound(g: &BipartiteGraph, j: usize) -> Result<u64> {
    if j < 2 {
        return Err(Error::Config("face bound needs j >= 2".into()));
    }
    let comps = g.components();
    let inputs = FaceBoundInputs::compute(g, &comps, j)?;
    Ok(inputs.bound(j))
}

/// Certified genus interval, minimizing the face bound over `j_range`.
///
/// ```
/// use bigenus::genus::{genus_interval, DEFAULT_J_RANGE};
/// use bigenus::graph::build_bipartite;
///
/// // K_{3,3} has genus 1
/// let edges = (0..3).flat_map(|u| (0..3).map(move |w| (u, w))).collect();
/// let k33 = build_bipartite(3, 3, edges).unwrap();
/// let iv = genus_interval(&k33, &DEFAULT_J_RANGE).unwrap();
/// assert!(iv.lower <= 1 && 1 <= iv.upper);
/// ```
pub fn genus_interval(g: &BipartiteGraph, j_range: &[usize]) -> Result<GenusInterval> {
    let comps = g.components();
    genus_interval_with(g, &comps, j_range, DEFAULT_CYCLE_WORK_LIMIT)
}

/// Interval computation over a precomputed component decomposition.
pub fn genus_interval_with(
    g: &BipartiteGraph,
    comps: &Components,
    j_range: &[usize],
    work_limit: u64,
) -> Result<GenusInterval> {
    if j_range.is_empty() {
        return Err(Error::Config("j_range must be nonempty".into()));
    }
    if j_range.iter().any(|&j| j < 2) {
        return Err(Error::Config("face bound needs j >= 2".into()));
    }
    let j_max = *j_range.iter().max().unwrap();
    let inputs = FaceBoundInputs::compute_with_limit(g, comps, j_max, work_limit)?;
    let mut j_star = j_range[0];
    let mut best = u64::MAX;
    for &j in j_range {
        let b = inputs.bound(j);
        if b < best {
            best = b;
            j_star = j;
        }
    }
    let e = g.edge_count() as i64;
    let v = g.vertex_count() as i64;
    let kappa = comps.kappa() as i64;
    let num = e - v - best as i64 + kappa + 1;
    let lower = if num <= 0 { 0 } else { ((num + 1) / 2) as u64 };
    let upper = excess_upper_bound(&comps.summaries);
    debug_assert!(lower <= upper, "certificate bounds crossed");
    Ok(GenusInterval {
        lower,
        upper,
        point_estimate: (e - v + kappa) as f64 / 2.0,
        face_upper_bound: best,
        j_star,
    })
}

/// Exact orientable genus by exhaustive rotation-system search, summed
/// over components. Tree and unicyclic components contribute zero without
/// search; for each remaining component every combination of cyclic
/// neighbor orders is face-traced and the minimum of
/// (2 - v + e - f) / 2 is taken.
pub fn exact_genus_small(g: &SimpleGraph) -> Result<u64> {
    exact_genus_with_ceiling(g, DEFAULT_ROTATION_CEILING)
}

/// Exact genus of a bipartite graph (flattened).
pub fn exact_genus_small_bipartite(g: &BipartiteGraph) -> Result<u64> {
    exact_genus_small(&flatten_bipartite(g))
}

/// Exact genus with an explicit bound on the summed per-component
/// rotation-system counts.
pub fn exact_genus_with_ceiling(g: &SimpleGraph, ceiling: f64) -> Result<u64> {
    let comps = g.components();
    // Gather complex components and their state-space sizes first so the
    // ceiling check happens before any search starts.
    let mut complex: Vec<Vec<u32>> = vec![Vec::new(); comps.kappa()];
    for v in 0..g.vertex_count() {
        let id = comps.comp_of[v] as usize;
        if comps.summaries[id].class == ComponentClass::Complex {
            complex[id].push(v as u32);
        }
    }
    let mut total_states = 0.0f64;
    for verts in complex.iter() {
        if verts.is_empty() {
            continue;
        }
        let mut states = 1.0f64;
        for &v in verts {
            states *= factorial_f64(g.degree(v as usize).saturating_sub(1));
        }
        total_states += states;
    }
    if total_states > ceiling {
        return Err(Error::RotationCeiling {
            states: total_states,
            ceiling,
        });
    }
    let mut genus = 0u64;
    for verts in complex.into_iter().filter(|v| !v.is_empty()) {
        genus += component_genus(g, &verts);
    }
    Ok(genus)
}

fn factorial_f64(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Exhaustive minimum genus of one connected component with excess >= 2.
fn component_genus(g: &SimpleGraph, verts: &[u32]) -> u64 {
    let nl = verts.len();
    let mut local = std::collections::HashMap::with_capacity(nl);
    for (i, &v) in verts.iter().enumerate() {
        local.insert(v, i as u32);
    }
    // local adjacency in global sorted order
    let adj: Vec<Vec<u32>> = verts
        .iter()
        .map(|&v| g.neighbors(v as usize).iter().map(|u| local[u]).collect())
        .collect();
    let degrees: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let e: usize = degrees.iter().sum::<usize>() / 2;

    // dart layout: darts of vertex i occupy offset[i] .. offset[i] + deg(i)
    let mut offset = vec![0usize; nl + 1];
    for i in 0..nl {
        offset[i + 1] = offset[i] + degrees[i];
    }
    let darts = offset[nl];
    let dart_of = |v: usize, slot: usize| offset[v] + slot;
    let mut twin = vec![0u32; darts];
    for v in 0..nl {
        for (slot, &u) in adj[v].iter().enumerate() {
            let back = adj[u as usize]
                .binary_search(&(v as u32))
                .expect("reverse edge present");
            twin[dart_of(v, slot)] = dart_of(u as usize, back) as u32;
        }
    }

    // Early-exit lower bound: faces of a cellular embedding of a simple
    // connected graph on >= 3 vertices have length >= 3, or >= 4 when the
    // component is bipartite (face walks have even length).
    let face_cap = if is_bipartite_component(&adj) {
        e / 2
    } else {
        2 * e / 3
    };
    let lb_num = 2 + e as i64 - nl as i64 - face_cap as i64;
    let lower_bound = if lb_num <= 0 {
        0
    } else {
        ((lb_num + 1) / 2) as u64
    };

    // Odometer over per-vertex rotations: slot 0 stays first (cyclic
    // orders are counted once), the remaining deg - 1 slots run through
    // all permutations by factorial-base unranking.
    let free: Vec<usize> = (0..nl).filter(|&v| degrees[v] >= 3).collect();
    let counts: Vec<u64> = free
        .iter()
        .map(|&v| factorial_u64(degrees[v] - 1))
        .collect();
    let mut counters = vec![0u64; free.len()];

    let mut sigma = vec![0u32; darts];
    let mut rotation = vec![0u32; darts]; // slot order per vertex, flattened
    for v in 0..nl {
        for s in 0..degrees[v] {
            rotation[offset[v] + s] = s as u32;
        }
        write_sigma(&mut sigma, &rotation, &offset, v, degrees[v], dart_of);
    }

    let mut visited = vec![0u32; darts];
    let mut generation = 0u32;
    let mut best = u64::MAX;
    loop {
        generation += 1;
        let mut faces = 0u64;
        for d0 in 0..darts {
            if visited[d0] == generation {
                continue;
            }
            faces += 1;
            let mut d = d0;
            loop {
                visited[d] = generation;
                d = sigma[twin[d] as usize] as usize;
                if d == d0 {
                    break;
                }
            }
        }
        let euler = nl as i64 - e as i64 + faces as i64;
        debug_assert!(
            euler <= 2 && (2 - euler) % 2 == 0,
            "face trace gave v - e + f = {euler}"
        );
        let genus = ((2 - euler) / 2) as u64;
        if genus < best {
            best = genus;
            if best == lower_bound {
                break;
            }
        }
        // advance odometer
        let mut pos = 0;
        loop {
            if pos == free.len() {
                return best;
            }
            counters[pos] += 1;
            if counters[pos] < counts[pos] {
                break;
            }
            counters[pos] = 0;
            apply_rotation(
                &mut rotation,
                &mut sigma,
                &offset,
                free[pos],
                degrees[free[pos]],
                0,
                dart_of,
            );
            pos += 1;
        }
        let v = free[pos];
        apply_rotation(
            &mut rotation,
            &mut sigma,
            &offset,
            v,
            degrees[v],
            counters[pos],
            dart_of,
        );
    }
    best
}

/// Unranks permutation `index` of slots 1..deg into `rotation` for vertex
/// `v` and refreshes its sigma entries.
fn apply_rotation(
    rotation: &mut [u32],
    sigma: &mut [u32],
    offset: &[usize],
    v: usize,
    deg: usize,
    index: u64,
    dart_of: impl Fn(usize, usize) -> usize,
) {
    let m = deg - 1;
    let mut avail: Vec<u32> = (1..deg as u32).collect();
    let mut k = index;
    let base = offset[v];
    rotation[base] = 0;
    for i in 0..m {
        let f = factorial_u64(m - 1 - i);
        let idx = (k / f) as usize;
        k %= f;
        rotation[base + 1 + i] = avail.remove(idx);
    }
    write_sigma(sigma, rotation, offset, v, deg, dart_of);
}

fn write_sigma(
    sigma: &mut [u32],
    rotation: &[u32],
    offset: &[usize],
    v: usize,
    deg: usize,
    dart_of: impl Fn(usize, usize) -> usize,
) {
    let base = offset[v];
    for i in 0..deg {
        let cur = rotation[base + i] as usize;
        let next = rotation[base + (i + 1) % deg] as usize;
        sigma[dart_of(v, cur)] = dart_of(v, next) as u32;
    }
}

fn is_bipartite_component(adj: &[Vec<u32>]) -> bool {
    let n = adj.len();
    let mut color = vec![u8::MAX; n];
    color[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &u in &adj[v] {
            let u = u as usize;
            if color[u] == u8::MAX {
                color[u] = 1 - color[v];
                queue.push_back(u);
            } else if color[u] == color[v] {
                return false;
            }
        }
    }
    true
}
