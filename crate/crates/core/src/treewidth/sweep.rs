use crate::domination::{is_dominating, shrink};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::{exact_invariants, forest_minimum_dominating_set};
use crate::sequence::{certify, Move, ReconfigSequence, Walk};
use crate::vertex_set::VertexSet;
use crate::DEFAULT_INVARIANT_LIMIT;

use super::decomposition::{normalize_td, NormalizedTd, TreeDecomposition};

/// One bag of the sweep: the sets it was built from and the moves it made.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub bag: usize,
    pub entry: VertexSet,
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
    pub b1: VertexSet,
    pub b2: VertexSet,
    pub b3: VertexSet,
    /// `(D_j ∖ A) ∪ C ∪ B_3`.
    pub widened: VertexSet,
    /// `|D_j ∪ C ∪ B_3|`, the peak size during the step.
    pub peak: usize,
    pub exit: VertexSet,
    pub moves: Vec<Move>,
}

/// Checks the sweep invariant at bag `j`: `d_j` dominates, has at most
/// `gamma_upper` vertices, and every vertex of `d_j` retired before `X_j`
/// belongs to `d`.
pub fn check_property(
    g: &Graph,
    td: &NormalizedTd,
    j: usize,
    d_j: &VertexSet,
    d: &VertexSet,
    gamma_upper: usize,
) -> Result<()> {
    if d_j.len() > gamma_upper {
        return Err(Error::ClaimViolated(format!(
            "set at bag {} has {} vertices, more than Γ = {gamma_upper}",
            j + 1,
            d_j.len()
        )));
    }
    if !is_dominating(g, d_j) {
        return Err(Error::ClaimViolated(format!(
            "set at bag {} is not dominating: {}",
            j + 1,
            d_j.braced()
        )));
    }
    if let Some(v) = d_j.iter().find(|&v| td.is_retired_before(v, j) && !d.contains(v)) {
        return Err(Error::ClaimViolated(format!(
            "retired vertex {} at bag {} is outside the target set",
            v + 1,
            j + 1
        )));
    }
    Ok(())
}

/// Moves from `d_j` (satisfying the sweep invariant at `X_j`) to a set
/// satisfying it at `X_{j+1}`, within `Γ + width + 1`.
pub fn tw_step(
    g: &Graph,
    td: &NormalizedTd,
    j: usize,
    d_j: &VertexSet,
    d: &VertexSet,
    gamma_upper: usize,
) -> Result<StepRecord> {
    if j + 1 >= td.len() {
        return Err(Error::Precondition(format!(
            "step index {} must precede the root bag {}",
            j + 1,
            td.len()
        )));
    }
    check_property(g, td, j, d_j, d, gamma_upper)?;
    let bag = &td.bags[j];
    let k = gamma_upper + td.width + 1;

    let a: VertexSet = bag
        .iter()
        .filter(|&v| td.is_left(v, j) && d_j.contains(v) && !d.contains(v))
        .collect();
    let b: VertexSet = bag.iter().filter(|&v| !td.is_left(v, j)).collect();
    let c: VertexSet = d
        .iter()
        .filter(|&v| td.is_left(v, j) && !d_j.contains(v))
        .collect();
    let b1: VertexSet = b
        .iter()
        .filter(|&v| !d.contains(v) && g.neighbors(v).iter().any(|&w| c.contains(w)))
        .collect();
    let b2 = b.intersection(d_j);
    let b3: VertexSet = b
        .iter()
        .filter(|&v| !b1.contains(v) && !b2.contains(v))
        .collect();

    let added = c.union(&b3);
    let peak = d_j.union(&added).len();
    if peak > k {
        return Err(Error::ClaimViolated(format!(
            "step at bag {} peaks at {peak} vertices, over Γ + width + 1 = {k}",
            j + 1
        )));
    }
    let widened = d_j.difference(&a).union(&added);
    if !is_dominating(g, &widened) {
        return Err(Error::ClaimViolated(format!(
            "widened set {} at bag {} is not dominating",
            widened.braced(),
            j + 1
        )));
    }

    let mut walk = Walk::new(d_j, k)?;
    walk.add_all(added.iter())?;
    walk.remove_all(a.iter())?;
    let (_, removed) = shrink(g, &widened, gamma_upper, |v| !d.contains(v))?;
    walk.remove_all(removed)?;
    let exit = walk.current().clone();
    let moves = walk.finish().moves;
    if moves.len() > 2 * (td.width + 1) {
        return Err(Error::ClaimViolated(format!(
            "step at bag {} used {} moves, over 2(width + 1) = {}",
            j + 1,
            moves.len(),
            2 * (td.width + 1)
        )));
    }
    check_property(g, td, j + 1, &exit, d, gamma_upper)?;
    Ok(StepRecord {
        bag: j,
        entry: d_j.clone(),
        a,
        b,
        c,
        b1,
        b2,
        b3,
        widened,
        peak,
        exit,
        moves,
    })
}

/// Moves from `d_b` (satisfying the sweep invariant at the root bag) to
/// `d`: add `d ∖ d_b`, then remove `d_b ∖ d`.
pub fn final_merge(
    g: &Graph,
    td: &NormalizedTd,
    d_b: &VertexSet,
    d: &VertexSet,
    gamma_upper: usize,
) -> Result<Vec<Move>> {
    let root = td.root();
    check_property(g, td, root, d_b, d, gamma_upper)?;
    let extra = d_b.difference(d);
    let missing = d.difference(d_b);
    if !extra.is_subset(&td.bags[root]) || extra.len() > td.width + 1 {
        return Err(Error::ClaimViolated(format!(
            "vertices {} left for the final merge are not confined to the root bag",
            extra.braced()
        )));
    }
    let mut walk = Walk::new(d_b, gamma_upper + td.width + 1)?;
    walk.add_all(missing.iter())?;
    walk.remove_all(extra.iter())?;
    Ok(walk.finish().moves)
}

/// Sweeps `start` (dominating, at most `gamma_upper` vertices) into the
/// minimum dominating set `d`, one bag at a time.
pub fn sweep_to_target(
    g: &Graph,
    td: &NormalizedTd,
    start: &VertexSet,
    d: &VertexSet,
    gamma_upper: usize,
) -> Result<(ReconfigSequence, Vec<StepRecord>)> {
    let k = gamma_upper + td.width + 1;
    let mut walk = Walk::new(start, k)?;
    let mut steps = Vec::with_capacity(td.len());
    for j in 0..td.len() - 1 {
        let step = tw_step(g, td, j, walk.current(), d, gamma_upper)?;
        for &mv in &step.moves {
            apply(&mut walk, mv)?;
        }
        steps.push(step);
    }
    for mv in final_merge(g, td, walk.current(), d, gamma_upper)? {
        apply(&mut walk, mv)?;
    }
    let seq = walk.finish();
    let bound = 2 * td.len() * (td.width + 1);
    if seq.len() > bound {
        return Err(Error::ClaimViolated(format!(
            "sweep used {} moves, over 2b(width + 1) = {bound}",
            seq.len()
        )));
    }
    Ok((seq, steps))
}

/// A minimum dominating set when one can be computed exactly: forests of
/// any size, other graphs up to the brute-force limit.
fn known_minimum(g: &Graph) -> Result<Option<VertexSet>> {
    if g.is_forest() {
        return forest_minimum_dominating_set(g).map(Some);
    }
    if g.n() <= DEFAULT_INVARIANT_LIMIT {
        return Ok(Some(exact_invariants(g, DEFAULT_INVARIANT_LIMIT)?.witness_min_ds));
    }
    Ok(None)
}

fn apply(walk: &mut Walk, mv: Move) -> Result<()> {
    match mv.kind {
        crate::sequence::MoveKind::Add => walk.add(mv.vertex),
        crate::sequence::MoveKind::Remove => walk.remove(mv.vertex),
    }
}

/// Result of [`treewidth_transform`], with the per-bag records of both
/// sweeps for inspection.
#[derive(Clone, Debug)]
pub struct TreewidthOutcome {
    pub sequence: ReconfigSequence,
    pub width: usize,
    pub target: VertexSet,
    pub forward: Vec<StepRecord>,
    pub backward: Vec<StepRecord>,
    /// `4(n+1)(width+1)`.
    pub bound: usize,
    pub warnings: Vec<String>,
}

/// Transforms `ds` into `dt` inside `R_k(G)` with `k = Γ + width + 1`,
/// sweeping both ends into a minimum dominating set along `td`.
///
/// `target` is the minimum dominating set to sweep into; when absent it is
/// computed by brute force. A given target is checked for minimum size when
/// the graph is small enough and trusted (with a warning) otherwise.
pub fn treewidth_transform(
    g: &Graph,
    td: &TreeDecomposition,
    ds: &VertexSet,
    dt: &VertexSet,
    gamma_upper: usize,
    target: Option<&VertexSet>,
    root: Option<usize>,
) -> Result<TreewidthOutcome> {
    let norm = normalize_td(g, td, root)?;
    let k = gamma_upper + norm.width + 1;
    for (name, s) in [("start", ds), ("target", dt)] {
        s.check_range(g.n())?;
        if !is_dominating(g, s) {
            return Err(Error::NotDominating(format!("{name} set {}", s.braced())));
        }
        if s.len() > k {
            return Err(Error::BudgetExceeded { size: s.len(), k });
        }
    }

    let mut warnings = Vec::new();
    let d = match target {
        Some(d) => {
            d.check_range(g.n())?;
            if !is_dominating(g, d) {
                return Err(Error::NotDominating(format!("minimum set {}", d.braced())));
            }
            match known_minimum(g)? {
                Some(best) if best.len() != d.len() => {
                    return Err(Error::Precondition(format!(
                        "{} has {} vertices but the domination number is {}",
                        d.braced(),
                        d.len(),
                        best.len()
                    )));
                }
                Some(_) => {}
                None => warnings.push(format!(
                    "minimum size of {} not verified (n = {})",
                    d.braced(),
                    g.n()
                )),
            }
            d.clone()
        }
        None => known_minimum(g)?.ok_or(Error::GraphTooLarge {
            n: g.n(),
            limit: DEFAULT_INVARIANT_LIMIT,
        })?,
    };

    let half = |s: &VertexSet| -> Result<(ReconfigSequence, Vec<StepRecord>)> {
        let (reduced, removed) = shrink(g, s, gamma_upper, |v| !d.contains(v))?;
        if reduced.len() > gamma_upper {
            return Err(Error::Precondition(format!(
                "minimal dominating set {} is larger than Γ = {gamma_upper}",
                reduced.braced()
            )));
        }
        let mut walk = Walk::new(s, k)?;
        walk.remove_all(removed)?;
        let (sweep, steps) = sweep_to_target(g, &norm, &reduced, &d, gamma_upper)?;
        walk.follow(&sweep)?;
        Ok((walk.finish(), steps))
    };
    let (fwd, forward) = half(ds)?;
    let (bwd, backward) = half(dt)?;
    let sequence = certify(g, fwd.concat(&bwd.reversed()?)?, dt, "treewidth sweep")?;
    let bound = 4 * (g.n() + 1) * (norm.width + 1);
    if sequence.len() > bound {
        return Err(Error::ClaimViolated(format!(
            "sequence has {} moves, over 4(n+1)(width+1) = {bound}",
            sequence.len()
        )));
    }
    Ok(TreewidthOutcome {
        sequence,
        width: norm.width,
        target: d,
        forward,
        backward,
        bound,
        warnings,
    })
}
