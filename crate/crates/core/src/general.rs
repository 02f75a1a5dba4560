//! Transformations for arbitrary graphs with budget `Γ + α − 1`.
//!
//! Both endpoints are first shrunk to minimal dominating sets `D1`, `D2`.
//! Intersecting minimal sets are joined through a maximal independent set
//! containing a shared vertex. Disjoint ones are made to intersect by a
//! single swap when possible; otherwise a vertex `x` left undominated by the
//! failed swap anchors two maximal independent sets that bridge `D1` to
//! `D2`.

use crate::domination::{
    greedy_maximal_is, is_dominating, is_maximal_independent, is_minimal_dominating,
    reduce_to_minimal, Coverage,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::invariants::GraphInvariants;
use crate::sequence::{certify, ReconfigSequence, Walk};
use crate::vertex_set::VertexSet;

/// Moves from the minimal dominating set `d` to the maximal independent set
/// `s` through `d ∪ s`: add `s ∖ d`, then remove `d ∖ s`, both ascending.
pub fn is_ds_to_is_path(g: &Graph, d: &VertexSet, s: &VertexSet, k: usize) -> Result<ReconfigSequence> {
    d.check_range(g.n())?;
    s.check_range(g.n())?;
    if !is_minimal_dominating(g, d) {
        return Err(Error::NotMinimal(d.braced()));
    }
    if !is_maximal_independent(g, s) {
        return Err(Error::NotIndependent(s.braced()));
    }
    if d.is_disjoint(s) {
        return Err(Error::EmptyIntersection);
    }
    let mut walk = Walk::new(d, k)?;
    walk.add_all(s.difference(d).iter())?;
    walk.remove_all(d.difference(s).iter())?;
    Ok(walk.finish())
}

/// Joins two intersecting minimal dominating sets through the greedy
/// maximal independent set grown from their lowest common vertex.
pub fn common_vertex_path(g: &Graph, d1: &VertexSet, d2: &VertexSet, k: usize) -> Result<ReconfigSequence> {
    let x = d1.intersection(d2).first().ok_or(Error::EmptyIntersection)?;
    if d1 == d2 {
        return Ok(ReconfigSequence::empty(d1.clone(), k));
    }
    let s = greedy_maximal_is(g, &VertexSet::singleton(x))?;
    let there = is_ds_to_is_path(g, d1, &s, k)?;
    let back = is_ds_to_is_path(g, d2, &s, k)?;
    there.concat(&back.reversed()?)
}

/// Transforms `ds` into `dt` with `k = Γ + α − 1`.
///
/// For complete graphs (`α = 1`) the budget is `1`, where only equal
/// endpoints are connected. The result is re-verified and checked against
/// the `10n` length bound.
pub fn general_transform(
    g: &Graph,
    ds: &VertexSet,
    dt: &VertexSet,
    inv: &GraphInvariants,
) -> Result<ReconfigSequence> {
    let k = inv.gamma_upper + inv.alpha - 1;
    if inv.alpha < 2 && ds != dt {
        return Err(Error::Unreachable(format!(
            "R_{k} of a complete graph has no edges; {} and {} are distinct",
            ds.braced(),
            dt.braced()
        )));
    }
    let seq = general_transform_within(g, ds, dt, k)?;
    if seq.len() >= 10 * g.n() {
        return Err(Error::ClaimViolated(format!(
            "sequence has {} moves, not below 10n = {}",
            seq.len(),
            10 * g.n()
        )));
    }
    Ok(seq)
}

/// The same construction under an explicit budget `k`. Every intermediate
/// set is checked against `k`; budgets below `Γ + α − 1` may fail with
/// [`Error::BudgetExceeded`].
pub fn general_transform_within(
    g: &Graph,
    ds: &VertexSet,
    dt: &VertexSet,
    k: usize,
) -> Result<ReconfigSequence> {
    for (name, s) in [("start", ds), ("target", dt)] {
        s.check_range(g.n())?;
        if !is_dominating(g, s) {
            return Err(Error::NotDominating(format!("{name} set {}", s.braced())));
        }
        if s.len() > k {
            return Err(Error::BudgetExceeded { size: s.len(), k });
        }
    }
    if ds == dt {
        return Ok(ReconfigSequence::empty(ds.clone(), k));
    }
    let (d1, removed_s) = reduce_to_minimal(g, ds)?;
    let (d2, removed_t) = reduce_to_minimal(g, dt)?;

    let mut walk = Walk::new(ds, k)?;
    walk.remove_all(removed_s)?;
    walk.follow(&minimal_to_minimal(g, &d1, &d2, k)?)?;
    let mut tail = Walk::new(dt, k)?;
    tail.remove_all(removed_t)?;
    walk.follow(&tail.finish().reversed()?)?;
    certify(g, walk.finish(), dt, "general transformation")
}

fn minimal_to_minimal(g: &Graph, d1: &VertexSet, d2: &VertexSet, k: usize) -> Result<ReconfigSequence> {
    if !d1.is_disjoint(d2) {
        return common_vertex_path(g, d1, d2, k);
    }
    if let Some((u, v)) = find_dominating_swap(g, d1, d2) {
        let mut walk = Walk::new(d1, k)?;
        walk.add(v)?;
        walk.remove(u)?;
        let (swapped, removed) = reduce_to_minimal(g, walk.current())?;
        debug_assert!(swapped.contains(v));
        walk.remove_all(removed)?;
        walk.follow(&common_vertex_path(g, &swapped, d2, k)?)?;
        return Ok(walk.finish());
    }
    if d1.len() == 1 {
        // The lone vertex of d1 dominates everything, so it can sit next to
        // d2 while d2 is dismantled.
        let u = d1.first().expect("nonempty");
        let mut walk = Walk::new(d2, k)?;
        walk.add(u)?;
        walk.remove_all(d2.iter())?;
        return walk.finish().reversed();
    }

    let u = d1.first().expect("nonempty");
    let v = d2.first().expect("nonempty");
    let mut probe = d1.clone();
    probe.remove(u);
    probe.insert(v);
    let cov = Coverage::new(g, &probe);
    let x = g
        .vertices()
        .find(|&w| !cov.is_dominated(w))
        .ok_or_else(|| Error::ClaimViolated("failed swap left nothing undominated".into()))?;
    let u_k = d1
        .iter()
        .find(|&w| w != u && w != x && !g.has_edge(w, x))
        .ok_or_else(|| Error::ClaimViolated(format!("no partner for {} in d1", x + 1)))?;
    let s1 = greedy_maximal_is(g, &VertexSet::from([x, u_k]))?;
    let s2 = greedy_maximal_is(g, &VertexSet::from([x, v]))?;
    is_ds_to_is_path(g, d1, &s1, k)?
        .concat(&is_ds_to_is_path(g, &s1, &s2, k)?)?
        .concat(&is_ds_to_is_path(g, d2, &s2, k)?.reversed()?)
}

/// First pair `(u, v)`, ascending, with `(d1 ∖ {u}) ∪ {v}` dominating.
fn find_dominating_swap(g: &Graph, d1: &VertexSet, d2: &VertexSet) -> Option<(Vertex, Vertex)> {
    let mut cov = Coverage::new(g, d1);
    for u in d1 {
        cov.remove(u);
        for v in d2 {
            cov.add(v);
            let ok = cov.is_dominating();
            cov.remove(v);
            if ok {
                return Some((u, v));
            }
        }
        cov.add(u);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::*;
    use crate::invariants::exact_invariants;
    use crate::sequence::{verify_sequence, Move};

    fn set(ids: &[usize]) -> VertexSet {
        VertexSet::from_one_based(ids.iter().copied())
    }

    #[test]
    fn ds_to_is() {
        let p3 = gen_path(3).unwrap();
        assert!(is_ds_to_is_path(&p3, &set(&[1, 3]), &set(&[1, 3]), 3).unwrap().is_empty());
        assert!(matches!(
            is_ds_to_is_path(&p3, &set(&[2]), &set(&[1, 3]), 3),
            Err(Error::EmptyIntersection)
        ));
        let p4 = gen_path(4).unwrap();
        let seq = is_ds_to_is_path(&p4, &set(&[2, 3]), &set(&[1, 3]), 3).unwrap();
        assert_eq!(seq.moves, vec![Move::add(0), Move::remove(1)]);
        assert_eq!(seq.max_size().unwrap(), 3);
        assert!(matches!(
            is_ds_to_is_path(&p4, &set(&[2, 3]), &set(&[1, 3]), 2),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn common_vertex() {
        let p4 = gen_path(4).unwrap();
        let seq = common_vertex_path(&p4, &set(&[1, 3]), &set(&[1, 4]), 3).unwrap();
        assert!(verify_sequence(&p4, &seq, Some(&set(&[1, 4]))).valid);
        let same = common_vertex_path(&p4, &set(&[1, 3]), &set(&[1, 3]), 3).unwrap();
        assert!(verify_sequence(&p4, &same, Some(&set(&[1, 3]))).valid);

        let c4 = gen_cycle(4).unwrap();
        assert!(is_minimal_dominating(&c4, &set(&[1, 2])));
        let seq = common_vertex_path(&c4, &set(&[1, 3]), &set(&[1, 2]), 3).unwrap();
        assert!(verify_sequence(&c4, &seq, Some(&set(&[1, 2]))).valid);
        assert!(common_vertex_path(&c4, &set(&[1, 3]), &set(&[2, 4]), 3).is_err());
    }

    #[test]
    fn p3_swap_case() {
        let g = gen_path(3).unwrap();
        let inv = exact_invariants(&g, 24).unwrap();
        let seq = general_transform(&g, &set(&[1, 3]), &set(&[2]), &inv).unwrap();
        assert_eq!(seq.k, 3);
        assert_eq!(seq.moves, vec![Move::add(1), Move::remove(0), Move::remove(2)]);
    }

    #[test]
    fn equal_minimal_endpoints_give_empty_sequence() {
        let g = gen_grid(2, 3).unwrap();
        let inv = exact_invariants(&g, 24).unwrap();
        let d = inv.witness_upper_ds.clone();
        assert!(general_transform(&g, &d, &d, &inv).unwrap().is_empty());
    }

    #[test]
    fn p6_alternating_sets() {
        let g = gen_path(6).unwrap();
        let inv = exact_invariants(&g, 24).unwrap();
        let (a, b) = (set(&[1, 3, 5]), set(&[2, 4, 6]));
        let seq = general_transform(&g, &a, &b, &inv).unwrap();
        assert_eq!(seq.k, 5);
        assert!(seq.len() < 60);
        // shortest route in R_5(P6) has 6 moves
        assert!(seq.len() >= 6);
    }

    #[test]
    fn singleton_start_without_swap() {
        // star center alone vs all leaves: no single swap dominates
        let g = gen_star(3).unwrap();
        let inv = exact_invariants(&g, 24).unwrap();
        let (c, leaves) = (set(&[1]), set(&[2, 3, 4]));
        let seq = general_transform(&g, &c, &leaves, &inv).unwrap();
        assert!(verify_sequence(&g, &seq, Some(&leaves)).valid);
        let back = general_transform(&g, &leaves, &c, &inv).unwrap();
        assert!(verify_sequence(&g, &back, Some(&c)).valid);
    }

    #[test]
    fn complete_graphs() {
        let g = gen_complete(4).unwrap();
        let inv = exact_invariants(&g, 24).unwrap();
        assert_eq!(inv.alpha, 1);
        assert!(matches!(
            general_transform(&g, &set(&[1]), &set(&[2]), &inv),
            Err(Error::Unreachable(_))
        ));
        assert!(general_transform(&g, &set(&[1]), &set(&[1]), &inv).unwrap().is_empty());
        let seq = general_transform_within(&g, &set(&[1]), &set(&[2]), 2).unwrap();
        assert_eq!(seq.moves, vec![Move::add(1), Move::remove(0)]);
    }

    #[test]
    fn rejects_bad_endpoints() {
        let g = gen_path(4).unwrap();
        let inv = exact_invariants(&g, 24).unwrap();
        assert!(matches!(
            general_transform(&g, &set(&[1]), &set(&[2, 3]), &inv),
            Err(Error::NotDominating(_))
        ));
        assert!(matches!(
            general_transform_within(&g, &set(&[1, 2, 3, 4]), &set(&[2, 3]), 3),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
