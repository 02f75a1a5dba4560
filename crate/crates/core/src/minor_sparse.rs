//! Transformations for `d`-minor-sparse graphs with budget `Γ + d − 1`.
//!
//! A graph is `d`-minor-sparse when every bipartite minor has average degree
//! below `d`. For two dominating sets `A`, `B` of equal size with
//! `|B ∖ A| ≥ d`, the swap search either finds `a ∈ A ∖ B` and `d − 1`
//! vertices of `B ∖ A` that can replace it, or returns a bipartite minor of
//! average degree at least `d`, which the caller can check independently.

use std::fmt::Write as _;

use crate::domination::{is_dominating, shrink, Coverage};
use crate::error::{Error, Result};
use crate::general::general_transform_within;
use crate::graph::{Graph, Vertex};
use crate::sequence::{certify, ReconfigSequence, Walk};
use crate::vertex_set::VertexSet;

/// `a` can leave `A` once the `d − 1` vertices of `s` join.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapWitness {
    pub a: Vertex,
    pub s: VertexSet,
}

/// One vertex of `A ∖ B` with the vertices `x` it alone dominates within
/// `A`, and for each `x[j]` a vertex `b[j]` of `B ∖ A` dominating it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessRow {
    pub a: Vertex,
    pub b: Vec<Vertex>,
    pub x: Vec<Vertex>,
}

/// Certificate that a graph has a bipartite minor of average degree at
/// least `d` on the parts `A ∖ B` and `B ∖ A`: each `a` is contracted with
/// its `x` vertices lying outside both parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityWitness {
    pub d: usize,
    pub rows: Vec<WitnessRow>,
}

impl DensityWitness {
    /// Text form: a `w density <d> <rows>` header, then one
    /// `a <a> b <b...> x <x...>` line per row, 1-based.
    pub fn to_text(&self) -> String {
        let mut out = format!("w density {} {}\n", self.d, self.rows.len());
        let ids = |vs: &[Vertex]| {
            vs.iter()
                .map(|v| (v + 1).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        for row in &self.rows {
            let _ = writeln!(out, "a {} b {} x {}", row.a + 1, ids(&row.b), ids(&row.x));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'));
        let (line_no, header) = lines.next().ok_or_else(|| Error::parse(0, "empty witness"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let num = |line: usize, t: &str| -> Result<usize> {
            t.parse()
                .map_err(|_| Error::parse(line, format!("bad number `{t}`")))
        };
        let vertex = |line: usize, t: &str| -> Result<Vertex> {
            match num(line, t)? {
                0 => Err(Error::parse(line, "vertex ids are 1-based")),
                v => Ok(v - 1),
            }
        };
        if toks.len() != 4 || toks[0] != "w" || toks[1] != "density" {
            return Err(Error::parse(line_no, "expected `w density <d> <rows>`"));
        }
        let d = num(line_no, toks[2])?;
        let count = num(line_no, toks[3])?;
        let mut rows = Vec::with_capacity(count);
        for (line_no, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let b_at = toks.iter().position(|&t| t == "b");
            let x_at = toks.iter().position(|&t| t == "x");
            let (Some(b_at), Some(x_at)) = (b_at, x_at) else {
                return Err(Error::parse(line_no, "expected `a <a> b <b...> x <x...>`"));
            };
            if toks[0] != "a" || b_at != 2 || x_at < b_at {
                return Err(Error::parse(line_no, "expected `a <a> b <b...> x <x...>`"));
            }
            rows.push(WitnessRow {
                a: vertex(line_no, toks[1])?,
                b: toks[3..x_at].iter().map(|t| vertex(line_no, t)).collect::<Result<_>>()?,
                x: toks[x_at + 1..].iter().map(|t| vertex(line_no, t)).collect::<Result<_>>()?,
            });
        }
        if rows.len() != count {
            return Err(Error::parse(0, format!("header announces {count} rows, found {}", rows.len())));
        }
        Ok(Self { d, rows })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SwapSearch {
    Swap(SwapWitness),
    Dense(DensityWitness),
}

/// Searches for a swap out of `A` into `B`.
///
/// For each `a ∈ A ∖ B` ascending, `S` starts as the `d − 1` lowest vertices
/// of `B ∖ A`. A candidate is a vertex `x` with `N[x] ∩ A = {a}` and
/// `N[x] ∩ S = ∅`; if there is none, `(A ∪ S) ∖ {a}` dominates and the swap
/// is returned. Otherwise the lowest candidate `x` is paired with a vertex
/// `b` of `B ∖ A` outside `S` dominating it (`x` itself when `x ∈ B ∖ A`,
/// else the lowest such neighbor), and `S` becomes the recorded `b`s padded
/// with the lowest unused vertices of `B ∖ A`. After `d` pairs the row for
/// `a` is complete; if every `a` completes, the rows form a density witness.
pub fn find_swap(g: &Graph, a_set: &VertexSet, b_set: &VertexSet, d: usize) -> Result<SwapSearch> {
    a_set.check_range(g.n())?;
    b_set.check_range(g.n())?;
    if d < 2 {
        return Err(Error::Precondition(format!("density parameter must be at least 2, got {d}")));
    }
    for (name, s) in [("A", a_set), ("B", b_set)] {
        if !is_dominating(g, s) {
            return Err(Error::NotDominating(format!("{name} = {}", s.braced())));
        }
    }
    let a_only = a_set.difference(b_set);
    let b_only = b_set.difference(a_set);
    if b_only.len() < d || a_only.is_empty() {
        return Err(Error::Precondition(format!(
            "need |B ∖ A| ≥ {d} and A ⊄ B; got |B ∖ A| = {}, |A ∖ B| = {}",
            b_only.len(),
            a_only.len()
        )));
    }
    let cover_a = Coverage::new(g, a_set);
    let mut rows = Vec::with_capacity(a_only.len());
    for a in &a_only {
        let mut s: VertexSet = b_only.iter().take(d - 1).collect();
        let mut row = WitnessRow { a, b: Vec::new(), x: Vec::new() };
        for _ in 0..d {
            let candidate = g.closed_neighborhood(a).filter(|&x| {
                !a_set.iter().any(|other| other != a && g.closed_neighborhood(other).any(|w| w == x))
                    && !g.closed_neighborhood(x).any(|w| s.contains(w))
            });
            let Some(x) = candidate.min() else {
                let mut swapped = a_set.union(&s);
                swapped.remove(a);
                if !is_dominating(g, &swapped) {
                    return Err(Error::ClaimViolated(format!(
                        "swap of {} for {} does not dominate",
                        a + 1,
                        s.braced()
                    )));
                }
                return Ok(SwapSearch::Swap(SwapWitness { a, s }));
            };
            debug_assert!(cover_a.is_dominated(x));
            let b = if b_only.contains(x) {
                x
            } else {
                g.neighbors(x)
                    .iter()
                    .copied()
                    .find(|&w| b_only.contains(w) && !s.contains(w))
                    .ok_or_else(|| {
                        Error::ClaimViolated(format!("no vertex of B ∖ A dominates {}", x + 1))
                    })?
            };
            row.x.push(x);
            row.b.push(b);
            s = row.b.iter().copied().collect();
            s.extend(b_only.iter().filter(|w| !row.b.contains(w)).take((d - 1).saturating_sub(row.b.len())));
        }
        rows.push(row);
    }
    Ok(SwapSearch::Dense(DensityWitness { d, rows }))
}

/// Checks a density witness from scratch: row structure, the private
/// domination of every `x`, and then the minor itself, counting edges
/// between the branch sets of `A ∖ B` and the singletons of `B ∖ A`.
pub fn verify_density_witness(
    g: &Graph,
    a_set: &VertexSet,
    b_set: &VertexSet,
    w: &DensityWitness,
    d: usize,
) -> bool {
    let n = g.n();
    let a_only = a_set.difference(b_set);
    let b_only = b_set.difference(a_set);
    if w.d != d || d < 2 || a_only.iter().any(|v| v >= n) || b_only.iter().any(|v| v >= n) {
        return false;
    }
    let row_as: VertexSet = w.rows.iter().map(|r| r.a).collect();
    if row_as != a_only || w.rows.len() != a_only.len() {
        return false;
    }
    let mut owner = vec![usize::MAX; n];
    for (i, row) in w.rows.iter().enumerate() {
        let distinct_b: VertexSet = row.b.iter().copied().collect();
        if row.b.len() != d || row.x.len() != d || distinct_b.len() != d {
            return false;
        }
        if !distinct_b.is_subset(&b_only) {
            return false;
        }
        for (&x, &b) in row.x.iter().zip(&row.b) {
            if x >= n || owner[x] != usize::MAX {
                return false;
            }
            owner[x] = i;
            let private = a_set
                .iter()
                .filter(|&v| v == x || g.has_edge(v, x))
                .eq(std::iter::once(row.a));
            if !private || !(b == x || g.has_edge(b, x)) {
                return false;
            }
        }
    }

    // Branch sets: a itself plus its x's outside both parts.
    let mut branch = vec![usize::MAX; n];
    for (i, row) in w.rows.iter().enumerate() {
        branch[row.a] = i;
        for &x in &row.x {
            if !a_only.contains(x) && !b_only.contains(x) {
                if branch[x] != usize::MAX || !g.has_edge(row.a, x) {
                    return false;
                }
                branch[x] = i;
            }
        }
    }
    let mut degree = vec![VertexSet::new(); w.rows.len()];
    for v in g.vertices() {
        if branch[v] == usize::MAX {
            continue;
        }
        for &u in g.neighbors(v) {
            if b_only.contains(u) {
                degree[branch[v]].insert(u);
            }
        }
    }
    let edges: usize = degree.iter().map(|s| s.len()).sum();
    degree.iter().all(|s| s.len() >= d) && 2 * edges >= d * (a_only.len() + b_only.len())
}

/// Adds the lowest absent vertices, or removes removable ones (ascending),
/// until `d` has exactly `target` vertices.
pub fn pad_to_size(g: &Graph, d: &VertexSet, target: usize, k: usize) -> Result<(ReconfigSequence, VertexSet)> {
    d.check_range(g.n())?;
    if !is_dominating(g, d) {
        return Err(Error::NotDominating(d.braced()));
    }
    if target > g.n() {
        return Err(Error::Precondition(format!("cannot pad to {target} vertices with n = {}", g.n())));
    }
    let mut walk = Walk::new(d, k)?;
    if d.len() < target {
        let absent: Vec<Vertex> = g.vertices().filter(|&v| !d.contains(v)).take(target - d.len()).collect();
        walk.add_all(absent)?;
    } else {
        let (reduced, removed) = shrink(g, d, target, |_| false)?;
        if reduced.len() != target {
            return Err(Error::Precondition(format!(
                "{} is minimal at {} vertices, above {target}",
                reduced.braced(),
                reduced.len()
            )));
        }
        walk.remove_all(removed)?;
    }
    let end = walk.current().clone();
    Ok((walk.finish(), end))
}

/// Transforms `ds` into `dt` with `k = Γ + d − 1`.
///
/// Both ends are padded to exactly `Γ` vertices. While `|Dt ∖ Ds| ≥ d`, a
/// swap adds `d − 1` vertices of `Dt`, drops one vertex of `Ds ∖ Dt` and
/// shrinks back to `Γ` (dropping vertices outside `Dt` first); the rest is
/// a direct exchange. Fails with [`Error::NotMinorSparse`] when the swap
/// search produces a density witness instead. For `d > Γ` the general
/// construction is run with the same budget.
pub fn minor_sparse_transform(
    g: &Graph,
    ds: &VertexSet,
    dt: &VertexSet,
    d: usize,
    gamma_upper: usize,
) -> Result<ReconfigSequence> {
    if d < 2 {
        return Err(Error::Precondition(format!("density parameter must be at least 2, got {d}")));
    }
    let k = gamma_upper + d - 1;
    for (name, s) in [("start", ds), ("target", dt)] {
        s.check_range(g.n())?;
        if !is_dominating(g, s) {
            return Err(Error::NotDominating(format!("{name} set {}", s.braced())));
        }
        if s.len() > k {
            return Err(Error::BudgetExceeded { size: s.len(), k });
        }
    }
    if d > gamma_upper {
        return general_transform_within(g, ds, dt, k);
    }

    let (head, mut current) = pad_to_size(g, ds, gamma_upper, k)?;
    let (tail, target) = pad_to_size(g, dt, gamma_upper, k)?;
    let mut walk = Walk::new(ds, k)?;
    walk.follow(&head)?;
    loop {
        let missing = target.difference(&current).len();
        if missing < d {
            break;
        }
        let swap = match find_swap(g, &current, &target, d)? {
            SwapSearch::Swap(swap) => swap,
            SwapSearch::Dense(w) => return Err(Error::NotMinorSparse(Box::new(w))),
        };
        walk.add_all(swap.s.iter())?;
        walk.remove(swap.a)?;
        let (_, removed) = shrink(g, walk.current(), gamma_upper, |v| !target.contains(v))?;
        walk.remove_all(removed)?;
        current = walk.current().clone();
        if target.difference(&current).len() >= missing {
            return Err(Error::ClaimViolated(format!(
                "swap did not bring {} closer to {}",
                current.braced(),
                target.braced()
            )));
        }
    }
    walk.add_all(target.difference(&current).iter())?;
    walk.remove_all(current.difference(&target).iter())?;
    walk.follow(&tail.reversed()?)?;
    let seq = certify(g, walk.finish(), dt, "minor-sparse transformation")?;
    let bound = 2 * gamma_upper * (d - 1) + 2 * (gamma_upper - 1);
    if seq.len() > bound {
        return Err(Error::ClaimViolated(format!(
            "sequence has {} moves, over 2Γ(d−1) + 2(Γ−1) = {bound}",
            seq.len()
        )));
    }
    Ok(seq)
}

/// Graph classes with a known density parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SparseClass {
    /// Bipartite planar graphs have fewer than `2n` edges.
    Planar,
    /// Average degree of `K_ell`-minor-free graphs is at most
    /// `c · ell · sqrt(log2 ell)` for an unspecified constant `c`; the
    /// result is only as good as the supplied `c`.
    MinorFree { ell: usize, c: f64 },
}

pub fn suggested_density(class: SparseClass) -> Result<usize> {
    match class {
        SparseClass::Planar => Ok(4),
        SparseClass::MinorFree { ell, c } => {
            if ell < 3 {
                return Err(Error::Precondition(format!("excluded clique size must be at least 3, got {ell}")));
            }
            if !(c > 0.0 && c.is_finite()) {
                return Err(Error::Precondition(format!("constant must be positive, got {c}")));
            }
            let ell = ell as f64;
            Ok((c * ell * ell.log2().sqrt()).ceil().max(2.0) as usize)
        }
    }
}
