//! Brute-force γ, Γ and α with witnesses.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::{canonical_cmp_masks, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphInvariants {
    /// γ: size of a minimum dominating set.
    pub gamma_min: usize,
    /// Γ: maximum size of an inclusion-wise minimal dominating set.
    pub gamma_upper: usize,
    /// α: maximum independent set size.
    pub alpha: usize,
    pub witness_min_ds: VertexSet,
    pub witness_upper_ds: VertexSet,
    pub witness_max_is: VertexSet,
}

/// Enumerates all `2^n` vertex subsets. Witnesses are the first sets of
/// extremal size in size-then-lexicographic order.
pub fn exact_invariants(g: &Graph, limit: usize) -> Result<GraphInvariants> {
    let n = g.n();
    if n > limit || n > 40 {
        return Err(Error::GraphTooLarge { n, limit: limit.min(40) });
    }
    let closed = g.closed_masks();
    let open: Vec<u64> = closed
        .iter()
        .enumerate()
        .map(|(v, m)| m & !(1u64 << v))
        .collect();
    let full: u64 = (1u64 << n) - 1;

    let lo_bits = n.min(12);
    let hi_bits = n - lo_bits;
    let lo_len = 1usize << lo_bits;
    // Tables over the low vertices: closed cover, open neighborhood union,
    // and independence.
    let mut lo_cover = vec![0u64; lo_len];
    let mut lo_open = vec![0u64; lo_len];
    let mut lo_indep = vec![true; lo_len];
    for lo in 1..lo_len {
        let v = lo.trailing_zeros() as usize;
        let rest = lo & (lo - 1);
        lo_cover[lo] = lo_cover[rest] | closed[v];
        lo_open[lo] = lo_open[rest] | open[v];
        lo_indep[lo] = lo_indep[rest] && (open[v] & rest as u64) == 0;
    }

    let best = (0u64..(1u64 << hi_bits))
        .into_par_iter()
        .fold(Best::default, |mut best, hi| {
            let hi_mask = hi << lo_bits;
            let (mut hi_cover, mut hi_open) = (0u64, 0u64);
            let mut m = hi_mask;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                hi_cover |= closed[v];
                hi_open |= open[v];
                m &= m - 1;
            }
            let hi_indep = hi_open & hi_mask == 0;
            for lo in 0..lo_len {
                let set = hi_mask | lo as u64;
                if hi_indep && lo_indep[lo] && lo_open[lo] & hi_mask == 0 {
                    best.offer_alpha(set);
                }
                if (lo_cover[lo] | hi_cover) == full {
                    best.offer_gamma(set);
                    if best.wants_upper(set) && is_minimal_mask(set, &closed) {
                        best.upper = Some(set);
                    }
                }
            }
            best
        })
        .reduce(Best::default, Best::merge);

    let gamma = best.gamma.expect("V is always dominating");
    let upper = best.upper.expect("some minimal dominating set exists");
    let alpha = best.alpha.expect("the empty set is independent");
    Ok(GraphInvariants {
        gamma_min: gamma.count_ones() as usize,
        gamma_upper: upper.count_ones() as usize,
        alpha: alpha.count_ones() as usize,
        witness_min_ds: VertexSet::from_mask(gamma),
        witness_upper_ds: VertexSet::from_mask(upper),
        witness_max_is: VertexSet::from_mask(alpha),
    })
}

/// A dominating `set` is minimal iff every member has a private vertex,
/// i.e. one covered exactly once.
fn is_minimal_mask(set: u64, closed: &[u64]) -> bool {
    let (mut once, mut twice) = (0u64, 0u64);
    let mut m = set;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        twice |= once & closed[v];
        once |= closed[v];
        m &= m - 1;
    }
    let exactly_once = once & !twice;
    let mut m = set;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        if closed[v] & exactly_once == 0 {
            return false;
        }
        m &= m - 1;
    }
    true
}

#[derive(Default, Clone, Copy)]
struct Best {
    gamma: Option<u64>,
    upper: Option<u64>,
    alpha: Option<u64>,
}

/// Keeps the smaller set, or the larger one when `larger` is set; equal
/// sizes fall back to lexicographic order.
fn pick(cur: Option<u64>, cand: u64, larger: bool) -> Option<u64> {
    match cur {
        None => Some(cand),
        Some(c) => {
            let by_size = cand.count_ones().cmp(&c.count_ones());
            let by_size = if larger { by_size.reverse() } else { by_size };
            let better = by_size.then_with(|| canonical_cmp_masks(cand, c)) == Ordering::Less;
            Some(if better { cand } else { c })
        }
    }
}

impl Best {
    fn offer_gamma(&mut self, set: u64) {
        self.gamma = pick(self.gamma, set, false);
    }

    fn offer_alpha(&mut self, set: u64) {
        self.alpha = pick(self.alpha, set, true);
    }

    fn wants_upper(&self, set: u64) -> bool {
        self.upper.is_none_or(|c| pick(Some(c), set, true) != Some(c))
    }

    fn merge(self, other: Best) -> Best {
        let join = |a: Option<u64>, b: Option<u64>, larger| match (a, b) {
            (Some(x), Some(y)) => pick(Some(x), y, larger),
            (x, None) => x,
            (None, y) => y,
        };
        Best {
            gamma: join(self.gamma, other.gamma, false),
            upper: join(self.upper, other.upper, true),
            alpha: join(self.alpha, other.alpha, true),
        }
    }
}

/// Parent-before-child order of a forest (each component from its lowest
/// vertex) with the parent of every vertex.
fn forest_order(g: &Graph) -> Result<(Vec<usize>, Vec<Option<usize>>)> {
    if !g.is_forest() {
        return Err(Error::Precondition("graph is not a forest".into()));
    }
    let mut order = Vec::with_capacity(g.n());
    let mut parent = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    for root in g.vertices() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let start = order.len();
        order.push(root);
        let mut head = start;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    order.push(v);
                }
            }
        }
    }
    Ok((order, parent))
}

/// Minimum dominating set of a forest: scanning leaves-up, every vertex
/// still undominated puts its parent (or itself, at a root) into the set.
pub fn forest_minimum_dominating_set(g: &Graph) -> Result<VertexSet> {
    let (order, parent) = forest_order(g)?;
    let mut dominated = vec![false; g.n()];
    let mut set = VertexSet::new();
    for &v in order.iter().rev() {
        if dominated[v] {
            continue;
        }
        let pick = parent[v].unwrap_or(v);
        set.insert(pick);
        for w in g.closed_neighborhood(pick) {
            dominated[w] = true;
        }
    }
    Ok(set)
}

/// Independence number of a forest by the include/exclude recurrence.
pub fn forest_independence_number(g: &Graph) -> Result<usize> {
    let (order, parent) = forest_order(g)?;
    let mut take = vec![1usize; g.n()];
    let mut skip = vec![0usize; g.n()];
    let mut total = 0;
    for &v in order.iter().rev() {
        let best = take[v].max(skip[v]);
        match parent[v] {
            Some(p) => {
                take[p] += skip[v];
                skip[p] += best;
            }
            None => total += best,
        }
    }
    Ok(total)
}

/// Upper domination number of a forest. On bipartite graphs the upper
/// domination number equals the independence number, which forests give
/// up in linear time.
pub fn forest_upper_domination(g: &Graph) -> Result<usize> {
    forest_independence_number(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::{is_dominating, is_independent, is_minimal_dominating};
    use crate::instances::*;

    fn check_witnesses(g: &Graph, inv: &GraphInvariants) {
        assert!(is_dominating(g, &inv.witness_min_ds));
        assert_eq!(inv.witness_min_ds.len(), inv.gamma_min);
        assert!(is_minimal_dominating(g, &inv.witness_upper_ds));
        assert_eq!(inv.witness_upper_ds.len(), inv.gamma_upper);
        assert!(is_independent(g, &inv.witness_max_is));
        assert_eq!(inv.witness_max_is.len(), inv.alpha);
        assert!(inv.gamma_min <= inv.alpha && inv.alpha <= inv.gamma_upper);
    }

    #[test]
    fn star() {
        let g = gen_star(3).unwrap();
        let inv = exact_invariants(&g, 24).unwrap();
        assert_eq!((inv.gamma_min, inv.gamma_upper, inv.alpha), (1, 3, 3));
        assert_eq!(inv.witness_min_ds, VertexSet::from([0]));
        check_witnesses(&g, &inv);
    }

    #[test]
    fn path6() {
        let g = gen_path(6).unwrap();
        let inv = exact_invariants(&g, 24).unwrap();
        assert_eq!((inv.gamma_min, inv.gamma_upper, inv.alpha), (2, 3, 3));
        // first in size-then-lex order
        assert_eq!(inv.witness_min_ds, VertexSet::from_one_based([2, 5]));
        assert_eq!(inv.witness_max_is, VertexSet::from_one_based([1, 3, 5]));
        check_witnesses(&g, &inv);
    }

    #[test]
    fn mynhardt_and_suzuki() {
        let g = gen_mynhardt(3).unwrap();
        let inv = exact_invariants(&g, 24).unwrap();
        assert_eq!(inv.gamma_upper, 3);
        check_witnesses(&g, &inv);
        let s = gen_suzuki_planar();
        let inv = exact_invariants(&s, 24).unwrap();
        assert_eq!(inv.gamma_upper, 3);
        check_witnesses(&s, &inv);
    }

    #[test]
    fn splits_above_twelve_vertices() {
        // exercises the hi/lo split against a small brute force
        let g = gen_grid(3, 5).unwrap();
        let inv = exact_invariants(&g, 24).unwrap();
        check_witnesses(&g, &inv);
        let closed = g.closed_masks();
        let full = (1u64 << g.n()) - 1;
        let gamma = (0u64..=full)
            .filter(|&s| {
                let c = closed
                    .iter()
                    .enumerate()
                    .filter(|&(v, _)| s >> v & 1 == 1)
                    .fold(0, |c, (_, &m)| c | m);
                c == full
            })
            .map(|s| s.count_ones() as usize)
            .min()
            .unwrap();
        assert_eq!(inv.gamma_min, gamma);
    }

    #[test]
    fn refuses_large_graphs() {
        let g = gen_path(30).unwrap();
        assert!(matches!(
            exact_invariants(&g, 24),
            Err(Error::GraphTooLarge { n: 30, .. })
        ));
    }

    #[test]
    fn forest_routines_match_brute_force() {
        for seed in 0..60 {
            let n = 2 + (seed as usize % 19);
            let g = gen_random_tree(n, seed).unwrap();
            let inv = exact_invariants(&g, 24).unwrap();
            let d = forest_minimum_dominating_set(&g).unwrap();
            assert!(crate::domination::is_dominating(&g, &d));
            assert_eq!(d.len(), inv.gamma_min, "seed {seed}");
            assert_eq!(forest_independence_number(&g).unwrap(), inv.alpha);
            assert_eq!(forest_upper_domination(&g).unwrap(), inv.gamma_upper, "seed {seed}");
        }
        let two_paths = Graph::from_edges(7, [(0, 1), (1, 2), (3, 4), (4, 5), (5, 6)]).unwrap();
        assert_eq!(forest_minimum_dominating_set(&two_paths).unwrap().len(), 3);
        assert_eq!(forest_independence_number(&two_paths).unwrap(), 4);
        assert!(forest_minimum_dominating_set(&gen_cycle(4).unwrap()).is_err());
    }
}
