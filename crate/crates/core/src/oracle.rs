//! Explicit k-dominating graphs `R_k(G)` for small graphs.
//!
//! Nodes are all dominating sets of size at most `k`, stored as bit masks in
//! size-then-lexicographic order; two nodes are adjacent when they differ in
//! exactly one vertex. Everything here is exhaustive and exact.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::exact_invariants;
use crate::vertex_set::{canonical_cmp_masks, VertexSet};
use crate::{DEFAULT_INVARIANT_LIMIT, DEFAULT_ORACLE_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub vertex_limit: usize,
    /// Refuse when more subsets than this would be scanned.
    pub max_subsets: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            vertex_limit: DEFAULT_ORACLE_LIMIT,
            max_subsets: 1 << 22,
        }
    }
}

/// Hop count in `R_k`, or infinity across components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReconfigGraph {
    pub k: usize,
    pub n: usize,
    nodes: Vec<u64>,
    index: HashMap<u64, u32>,
    /// CSR adjacency.
    offsets: Vec<usize>,
    targets: Vec<u32>,
    component: Vec<u32>,
    components: usize,
}

fn subsets_up_to(n: usize, k: usize) -> u64 {
    let mut total: u64 = 0;
    let mut binom: u64 = 1;
    for r in 0..=k.min(n) {
        total = total.saturating_add(binom);
        binom = binom * (n - r) as u64 / (r as u64 + 1);
    }
    total
}

/// All `r`-subsets of `0..n` as masks (Gosper's hack).
fn combinations(n: usize, r: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let first = if r == 0 { 0 } else { (1u64 << r) - 1 };
    let mut next = Some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            let succ = (((ripple ^ cur) >> 2) / low) | ripple;
            (succ < limit).then_some(succ)
        };
        Some(cur)
    })
}

/// Builds `R_k(g)`. A `k` below γ gives an empty graph, which is reported
/// through [`ReconfigGraph::node_count`] rather than as an error.
pub fn build_reconfig_graph(g: &Graph, k: usize, cfg: &OracleConfig) -> Result<ReconfigGraph> {
    let n = g.n();
    if n > cfg.vertex_limit || n > 40 {
        return Err(Error::GraphTooLarge {
            n,
            limit: cfg.vertex_limit.min(40),
        });
    }
    let scanned = subsets_up_to(n, k);
    if scanned > cfg.max_subsets {
        return Err(Error::ResourceLimit(format!(
            "R_{k} would scan {scanned} subsets (cap {})",
            cfg.max_subsets
        )));
    }
    let closed = g.closed_masks();
    let full: u64 = (1u64 << n) - 1;
    let dominates = |set: u64| {
        let mut cover = 0u64;
        let mut m = set;
        while m != 0 {
            cover |= closed[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        cover == full
    };

    let candidates: Vec<u64> = (0..=k.min(n)).flat_map(|r| combinations(n, r)).collect();
    let mut nodes: Vec<u64> = candidates.into_par_iter().filter(|&s| dominates(s)).collect();
    nodes.par_sort_unstable_by(|&a, &b| canonical_cmp_masks(a, b));
    let index: HashMap<u64, u32> = nodes
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, i as u32))
        .collect();

    let neighbor_lists: Vec<Vec<u32>> = nodes
        .par_iter()
        .map(|&s| {
            (0..n)
                .filter_map(|v| index.get(&(s ^ (1u64 << v))).copied())
                .collect()
        })
        .collect();
    let mut offsets = Vec::with_capacity(nodes.len() + 1);
    offsets.push(0);
    let mut targets = Vec::new();
    for list in &neighbor_lists {
        targets.extend_from_slice(list);
        offsets.push(targets.len());
    }

    let mut rg = ReconfigGraph {
        k,
        n,
        nodes,
        index,
        offsets,
        targets,
        component: Vec::new(),
        components: 0,
    };
    rg.label_components();
    Ok(rg)
}

impl ReconfigGraph {
    fn label_components(&mut self) {
        let mut comp = vec![u32::MAX; self.nodes.len()];
        let mut next = 0u32;
        for s in 0..self.nodes.len() {
            if comp[s] != u32::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s as u32];
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if comp[v as usize] == u32::MAX {
                        comp[v as usize] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        self.component = comp;
        self.components = next as usize;
    }

    fn neighbors(&self, i: u32) -> &[u32] {
        let i = i as usize;
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    /// Nodes in canonical (size, then lexicographic) order.
    pub fn nodes(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.nodes.iter().map(|&m| VertexSet::from_mask(m))
    }

    pub fn contains(&self, s: &VertexSet) -> bool {
        self.node_index(s).is_some()
    }

    fn node_index(&self, s: &VertexSet) -> Option<u32> {
        if s.last().is_some_and(|v| v >= self.n) {
            return None;
        }
        self.index.get(&s.to_mask()).copied()
    }

    fn require(&self, s: &VertexSet) -> Result<u32> {
        self.node_index(s).ok_or_else(|| {
            Error::Precondition(format!(
                "{} is not a node of R_{} (not dominating or larger than k)",
                s.braced(),
                self.k
            ))
        })
    }

    pub fn component_of(&self, s: &VertexSet) -> Result<usize> {
        Ok(self.component[self.require(s)? as usize] as usize)
    }

    pub fn degree(&self, s: &VertexSet) -> Result<usize> {
        Ok(self.neighbors(self.require(s)?).len())
    }

    /// All nodes reachable from `s` (its component).
    pub fn component_members(&self, s: &VertexSet) -> Result<Vec<VertexSet>> {
        let c = self.component[self.require(s)? as usize];
        Ok(self
            .nodes
            .iter()
            .zip(&self.component)
            .filter(|(_, &cc)| cc == c)
            .map(|(&m, _)| VertexSet::from_mask(m))
            .collect())
    }

    /// BFS distances from node `src` (`u32::MAX` = unreachable).
    fn bfs(&self, src: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.nodes.len()];
        dist[src as usize] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &v in self.neighbors(u) {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = du + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Distances from `a` to every node, aligned with [`Self::nodes`].
    pub fn distances_from(&self, a: &VertexSet) -> Result<Vec<Distance>> {
        Ok(self
            .bfs(self.require(a)?)
            .into_iter()
            .map(|d| {
                if d == u32::MAX {
                    Distance::Infinite
                } else {
                    Distance::Finite(d as usize)
                }
            })
            .collect())
    }

    pub fn distance(&self, a: &VertexSet, b: &VertexSet) -> Result<Distance> {
        let (ia, ib) = (self.require(a)?, self.require(b)?);
        let d = self.bfs(ia)[ib as usize];
        Ok(if d == u32::MAX {
            Distance::Infinite
        } else {
            Distance::Finite(d as usize)
        })
    }

    /// Empty and single-node graphs count as connected.
    pub fn is_connected(&self) -> bool {
        self.components <= 1
    }

    /// Isolated nodes: sets admitting no legal move.
    pub fn frozen_sets(&self) -> Vec<VertexSet> {
        (0..self.nodes.len() as u32)
            .filter(|&i| self.neighbors(i).is_empty())
            .map(|i| VertexSet::from_mask(self.nodes[i as usize]))
            .collect()
    }

    pub fn diameter(&self) -> DiameterReport {
        let eccentricities: Vec<u32> = (0..self.nodes.len() as u32)
            .into_par_iter()
            .map(|s| {
                self.bfs(s)
                    .into_iter()
                    .filter(|&d| d != u32::MAX)
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let max_component = eccentricities.iter().copied().max().unwrap_or(0) as usize;
        DiameterReport {
            diameter: if self.is_connected() {
                Distance::Finite(max_component)
            } else {
                Distance::Infinite
            },
            max_component_diameter: max_component,
        }
    }
}

/// `diameter` is infinite for disconnected graphs; the largest diameter of a
/// single component is kept alongside.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiameterReport {
    pub diameter: Distance,
    pub max_component_diameter: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdRow {
    pub k: usize,
    pub nodes: usize,
    pub edges: usize,
    pub components: usize,
    pub connected: bool,
    pub diameter: DiameterReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdReport {
    pub gamma_min: usize,
    pub gamma_upper: usize,
    pub rows: Vec<ThresholdRow>,
    /// Smallest scanned `k0` with every scanned `k >= k0` connected; `None`
    /// when the largest scanned `k` is disconnected.
    pub d0: Option<usize>,
    /// Values `k > Γ` where `R_k` is connected but `R_{k+1}` is not.
    pub monotonicity_violations: Vec<usize>,
}

impl ThresholdReport {
    pub fn row(&self, k: usize) -> Option<&ThresholdRow> {
        self.rows.iter().find(|r| r.k == k)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,nodes,edges,components,connected,diameter\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.k, r.nodes, r.edges, r.components, r.connected, r.diameter.diameter
            ));
        }
        out
    }
}

/// Connectivity and diameter of `R_k` for `k = γ..=kmax`.
pub fn threshold_scan(g: &Graph, kmax: usize, cfg: &OracleConfig) -> Result<ThresholdReport> {
    if kmax > g.n() {
        return Err(Error::Precondition(format!(
            "kmax = {kmax} exceeds n = {}",
            g.n()
        )));
    }
    if g.n() > cfg.vertex_limit {
        return Err(Error::GraphTooLarge {
            n: g.n(),
            limit: cfg.vertex_limit,
        });
    }
    let inv = exact_invariants(g, DEFAULT_INVARIANT_LIMIT.max(cfg.vertex_limit))?;
    let mut rows = Vec::new();
    for k in inv.gamma_min..=kmax {
        let rg = build_reconfig_graph(g, k, cfg)?;
        rows.push(ThresholdRow {
            k,
            nodes: rg.node_count(),
            edges: rg.edge_count(),
            components: rg.component_count(),
            connected: rg.is_connected(),
            diameter: rg.diameter(),
        });
    }
    let d0 = match rows.last() {
        Some(last) if last.connected => {
            let mut k0 = last.k;
            for r in rows.iter().rev() {
                if !r.connected {
                    break;
                }
                k0 = r.k;
            }
            Some(k0)
        }
        _ => None,
    };
    let monotonicity_violations = rows
        .windows(2)
        .filter(|w| w[0].k > inv.gamma_upper && w[0].connected && !w[1].connected)
        .map(|w| w[0].k)
        .collect();
    Ok(ThresholdReport {
        gamma_min: inv.gamma_min,
        gamma_upper: inv.gamma_upper,
        rows,
        d0,
        monotonicity_violations,
    })
}
