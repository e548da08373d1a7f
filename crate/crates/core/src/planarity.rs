//! Deterministic planarity testing via the left-right criterion: a DFS
//! orientation assigns every back edge a nesting depth, and the graph is
//! planar exactly when the back-edge return intervals admit a consistent
//! two-sided (left/right) partition. Runs in linear time and needs no
//! embedding output.
//!
//! The control flow follows the standard iterative formulation of the
//! algorithm (orientation phase, nesting-order sort, testing phase with a
//! stack of conflict pairs).

use crate::graph::{flatten_bipartite, BipartiteGraph, SimpleGraph};

const UNSET: u32 = u32::MAX;

/// Planarity of a simple graph.
pub fn is_planar(g: &SimpleGraph) -> bool {
    lr_planar(g.vertex_count(), g.edges())
}

/// Planarity of a bipartite graph, flattened to the combined vertex set.
pub fn is_planar_bipartite(g: &BipartiteGraph) -> bool {
    let flat = flatten_bipartite(g);
    is_planar(&flat)
}

#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
struct Interval {
    low: Option<u32>,
    high: Option<u32>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default, Debug)]
struct ConflictPair {
    l: Interval,
    r: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.l, &mut self.r);
    }
}

struct LrState {
    /// adjacency as (neighbor, edge id)
    adj: Vec<Vec<(u32, u32)>>,
    /// oriented edge endpoints, valid once `oriented` is set
    src: Vec<u32>,
    dst: Vec<u32>,
    oriented: Vec<bool>,
    height: Vec<u32>,
    parent_edge: Vec<u32>, // edge id or UNSET
    lowpt: Vec<u32>,
    lowpt2: Vec<u32>,
    nesting_depth: Vec<u32>,
    /// out-edges per vertex sorted by nesting depth
    ordered: Vec<Vec<u32>>,
    // testing phase
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<u32>,
    ref_edge: Vec<Option<u32>>,
}

/// Left-right planarity over an explicit edge list on vertices 0..n.
pub fn lr_planar(n: usize, edges: &[(u32, u32)]) -> bool {
    let m = edges.len();
    if n >= 3 && m > 3 * n - 6 {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    for (id, &(a, b)) in edges.iter().enumerate() {
        adj[a as usize].push((b, id as u32));
        adj[b as usize].push((a, id as u32));
    }
    let mut st = LrState {
        adj,
        src: vec![UNSET; m],
        dst: vec![UNSET; m],
        oriented: vec![false; m],
        height: vec![UNSET; n],
        parent_edge: vec![UNSET; n],
        lowpt: vec![0; m],
        lowpt2: vec![0; m],
        nesting_depth: vec![0; m],
        ordered: Vec::new(),
        stack: Vec::new(),
        stack_bottom: vec![0; m],
        lowpt_edge: vec![UNSET; m],
        ref_edge: vec![None; m],
    };
    let mut roots = Vec::new();
    for v in 0..n {
        if st.height[v] == UNSET {
            st.height[v] = 0;
            roots.push(v as u32);
            st.orient_from(v);
        }
    }
    st.ordered = vec![Vec::new(); n];
    let mut order: Vec<u32> = (0..m as u32).collect();
    order.sort_by_key(|&e| st.nesting_depth[e as usize]);
    for e in order {
        st.ordered[st.src[e as usize] as usize].push(e);
    }
    for root in roots {
        st.stack.clear();
        if !st.test_from(root as usize) {
            return false;
        }
    }
    true
}

impl LrState {
    /// Orientation DFS: assigns heights, orients edges, and computes
    /// lowpt / lowpt2 / nesting_depth.
    fn orient_from(&mut self, root: usize) {
        let mut ind = vec![0u32; self.adj.len()];
        let mut skip_init = vec![false; self.oriented.len()];
        let mut dfs_stack = vec![root as u32];
        while let Some(v) = dfs_stack.pop() {
            let v = v as usize;
            let e = self.parent_edge[v];
            while (ind[v] as usize) < self.adj[v].len() {
                let (w, eid) = self.adj[v][ind[v] as usize];
                let (w, eid) = (w as usize, eid as usize);
                if !skip_init[eid] {
                    if self.oriented[eid] {
                        ind[v] += 1;
                        continue;
                    }
                    self.oriented[eid] = true;
                    self.src[eid] = v as u32;
                    self.dst[eid] = w as u32;
                    self.lowpt[eid] = self.height[v];
                    self.lowpt2[eid] = self.height[v];
                    if self.height[w] == UNSET {
                        // tree edge: descend, resume at this edge later
                        self.parent_edge[w] = eid as u32;
                        self.height[w] = self.height[v] + 1;
                        dfs_stack.push(v as u32);
                        dfs_stack.push(w as u32);
                        skip_init[eid] = true;
                        break;
                    }
                    // back edge
                    self.lowpt[eid] = self.height[w];
                }
                self.nesting_depth[eid] =
                    2 * self.lowpt[eid] + u32::from(self.lowpt2[eid] < self.height[v]);
                if e != UNSET {
                    let e = e as usize;
                    use std::cmp::Ordering::*;
                    match self.lowpt[eid].cmp(&self.lowpt[e]) {
                        Less => {
                            self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[eid]);
                            self.lowpt[e] = self.lowpt[eid];
                        }
                        Greater => {
                            self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[eid]);
                        }
                        Equal => {
                            self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[eid]);
                        }
                    }
                }
                ind[v] += 1;
            }
        }
    }

    fn conflicting(&self, i: Interval, b: usize) -> bool {
        match i.high {
            None => false,
            Some(h) => self.lowpt[h as usize] > self.lowpt[b],
        }
    }

    fn lowest(&self, p: &ConflictPair) -> u32 {
        match (p.l.low, p.r.low) {
            (None, None) => unreachable!("empty conflict pair on stack"),
            (None, Some(r)) => self.lowpt[r as usize],
            (Some(l), None) => self.lowpt[l as usize],
            (Some(l), Some(r)) => self.lowpt[l as usize].min(self.lowpt[r as usize]),
        }
    }

    /// Testing DFS: merges return-edge intervals, failing exactly when a
    /// same-side constraint forces two conflicting intervals.
    fn test_from(&mut self, root: usize) -> bool {
        let mut ind = vec![0u32; self.adj.len()];
        let mut skip_init = vec![false; self.oriented.len()];
        let mut dfs_stack = vec![root as u32];
        while let Some(v) = dfs_stack.pop() {
            let v = v as usize;
            let e = self.parent_edge[v];
            let mut descended = false;
            while (ind[v] as usize) < self.ordered[v].len() {
                let i = ind[v] as usize;
                let eid = self.ordered[v][i] as usize;
                let w = self.dst[eid] as usize;
                if !skip_init[eid] {
                    self.stack_bottom[eid] = self.stack.len();
                    if self.parent_edge[w] == eid as u32 {
                        // tree edge: descend, resume here afterwards
                        dfs_stack.push(v as u32);
                        dfs_stack.push(w as u32);
                        skip_init[eid] = true;
                        descended = true;
                        break;
                    }
                    // back edge: its own one-edge interval
                    self.lowpt_edge[eid] = eid as u32;
                    self.stack.push(ConflictPair {
                        l: Interval::default(),
                        r: Interval {
                            low: Some(eid as u32),
                            high: Some(eid as u32),
                        },
                    });
                }
                if self.lowpt[eid] < self.height[v] {
                    // eid has a return edge below v
                    let pe = e as usize;
                    debug_assert!(e != UNSET, "root edges cannot return");
                    if i == 0 {
                        self.lowpt_edge[pe] = self.lowpt_edge[eid];
                    } else if !self.add_constraints(eid, pe) {
                        return false;
                    }
                }
                ind[v] += 1;
            }
            if !descended && e != UNSET {
                self.remove_back_edges(e as usize);
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, pe: usize) -> bool {
        let mut p = ConflictPair::default();
        // merge return edges of ei into p.r
        loop {
            let mut q = match self.stack.pop() {
                Some(q) => q,
                None => unreachable!("conflict stack underrun"),
            };
            if !q.l.is_empty() {
                q.swap();
            }
            if !q.l.is_empty() {
                return false; // not planar
            }
            let q_low = q.r.low.expect("stacked interval has a low edge");
            if self.lowpt[q_low as usize] > self.lowpt[pe] {
                // merge into p.r
                if p.r.is_empty() {
                    p.r.high = q.r.high;
                } else {
                    self.ref_edge[p.r.low.unwrap() as usize] = q.r.high;
                }
                p.r.low = q.r.low;
            } else {
                // align below lowpt(pe)
                self.ref_edge[q_low as usize] = Some(self.lowpt_edge[pe]);
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // merge conflicting return edges of earlier siblings into p.l
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(top.l, ei) || self.conflicting(top.r, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(q.r, ei) {
                q.swap();
            }
            if self.conflicting(q.r, ei) {
                return false; // not planar
            }
            // interval below lowpt(ei) merges into p.r
            if let Some(pr_low) = p.r.low {
                self.ref_edge[pr_low as usize] = q.r.high;
            }
            if q.r.low.is_some() {
                p.r.low = q.r.low;
            }
            if p.l.is_empty() {
                p.l.high = q.l.high;
            } else {
                self.ref_edge[p.l.low.unwrap() as usize] = q.l.high;
            }
            p.l.low = q.l.low;
        }
        if !(p.l.is_empty() && p.r.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, pe: usize) {
        let u = self.src[pe] as usize;
        // drop whole conflict pairs returning exactly to u
        while let Some(top) = self.stack.last() {
            if self.lowest(top) == self.height[u] {
                self.stack.pop();
            } else {
                break;
            }
        }
        // trim the topmost remaining pair
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.l.high {
                if self.dst[h as usize] as usize == u {
                    p.l.high = self.ref_edge[h as usize];
                } else {
                    break;
                }
            }
            if p.l.high.is_none() && p.l.low.is_some() {
                // left interval just emptied
                self.ref_edge[p.l.low.unwrap() as usize] = p.r.low;
                p.l.low = None;
            }
            while let Some(h) = p.r.high {
                if self.dst[h as usize] as usize == u {
                    p.r.high = self.ref_edge[h as usize];
                } else {
                    break;
                }
            }
            if p.r.high.is_none() && p.r.low.is_some() {
                self.ref_edge[p.r.low.unwrap() as usize] = p.l.low;
                p.r.low = None;
            }
            self.stack.push(p);
        }
    }
}
