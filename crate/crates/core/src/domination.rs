//! Domination and independence predicates, plus the two greedy procedures
//! every transformation is built from: shrinking a dominating set and
//! completing an independent set.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::vertex_set::VertexSet;

/// Per-vertex count of `|N[v] ∩ S|` for a set `S` under construction.
#[derive(Clone, Debug)]
pub struct Coverage<'g> {
    g: &'g Graph,
    count: Vec<u32>,
    undominated: usize,
}

impl<'g> Coverage<'g> {
    pub fn new(g: &'g Graph, s: &VertexSet) -> Self {
        let mut cov = Self {
            g,
            count: vec![0; g.n()],
            undominated: g.n(),
        };
        for v in s {
            cov.add(v);
        }
        cov
    }

    pub fn add(&mut self, v: Vertex) {
        for w in self.g.closed_neighborhood(v) {
            if self.count[w] == 0 {
                self.undominated -= 1;
            }
            self.count[w] += 1;
        }
    }

    pub fn remove(&mut self, v: Vertex) {
        for w in self.g.closed_neighborhood(v) {
            self.count[w] -= 1;
            if self.count[w] == 0 {
                self.undominated += 1;
            }
        }
    }

    pub fn is_dominating(&self) -> bool {
        self.undominated == 0
    }

    pub fn is_dominated(&self, v: Vertex) -> bool {
        self.count[v] > 0
    }

    /// Whether removing the member `v` keeps every vertex dominated.
    pub fn can_remove(&self, v: Vertex) -> bool {
        self.g.closed_neighborhood(v).all(|w| self.count[w] >= 2)
    }
}

pub fn is_dominating(g: &Graph, s: &VertexSet) -> bool {
    Coverage::new(g, s).is_dominating()
}

/// Vertices not dominated by `s`, ascending.
pub fn undominated(g: &Graph, s: &VertexSet) -> Vec<Vertex> {
    let cov = Coverage::new(g, s);
    g.vertices().filter(|&v| !cov.is_dominated(v)).collect()
}

/// `s` dominates and no single removal keeps it dominating.
pub fn is_minimal_dominating(g: &Graph, s: &VertexSet) -> bool {
    let cov = Coverage::new(g, s);
    cov.is_dominating() && s.iter().all(|v| !cov.can_remove(v))
}

pub fn is_independent(g: &Graph, s: &VertexSet) -> bool {
    s.iter()
        .all(|v| g.neighbors(v).iter().all(|&w| !s.contains(w)))
}

pub fn is_maximal_independent(g: &Graph, s: &VertexSet) -> bool {
    is_independent(g, s) && is_dominating(g, s)
}

/// Removes vertices from the dominating set `s` one at a time, keeping it
/// dominating, until it is minimal.
///
/// The scan is by ascending id: the first removable vertex goes, then the
/// scan restarts. Returns the minimal subset and the removal order.
pub fn reduce_to_minimal(g: &Graph, s: &VertexSet) -> Result<(VertexSet, Vec<Vertex>)> {
    shrink(g, s, 0, |_| false)
}

/// Like [`reduce_to_minimal`] but stops once `|s| <= target`, and tries the
/// vertices for which `prefer` holds before the others (ties by id).
///
/// The result may still be larger than `target` if it became minimal first.
pub fn shrink(
    g: &Graph,
    s: &VertexSet,
    target: usize,
    prefer: impl Fn(Vertex) -> bool,
) -> Result<(VertexSet, Vec<Vertex>)> {
    s.check_range(g.n())?;
    let mut cov = Coverage::new(g, s);
    if !cov.is_dominating() {
        return Err(Error::NotDominating(s.braced()));
    }
    let mut order: Vec<Vertex> = s.iter().collect();
    order.sort_by_key(|&v| (!prefer(v), v));
    let mut current = s.clone();
    let mut removed = Vec::new();
    while current.len() > target {
        let Some(pos) = order.iter().position(|&v| cov.can_remove(v)) else {
            break;
        };
        let v = order.remove(pos);
        cov.remove(v);
        current.remove(v);
        removed.push(v);
    }
    Ok((current, removed))
}

/// Completes the independent set `seed` to a maximal independent set by
/// scanning vertices in ascending id order.
pub fn greedy_maximal_is(g: &Graph, seed: &VertexSet) -> Result<VertexSet> {
    seed.check_range(g.n())?;
    if !is_independent(g, seed) {
        return Err(Error::NotIndependent(seed.braced()));
    }
    let mut blocked = vec![false; g.n()];
    for v in seed {
        blocked[v] = true;
        for &w in g.neighbors(v) {
            blocked[w] = true;
        }
    }
    let mut out = seed.clone();
    for v in g.vertices() {
        if !blocked[v] {
            out.insert(v);
            blocked[v] = true;
            for &w in g.neighbors(v) {
                blocked[w] = true;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{gen_path, gen_star};

    fn set(ids: &[usize]) -> VertexSet {
        VertexSet::from_one_based(ids.iter().copied())
    }

    #[test]
    fn domination_on_small_graphs() {
        let p3 = gen_path(3).unwrap();
        assert!(is_dominating(&p3, &set(&[2])));
        assert!(!is_dominating(&p3, &set(&[1])));
        assert_eq!(undominated(&p3, &set(&[1])), vec![2]);
        let k13 = gen_star(3).unwrap();
        assert!(is_dominating(&k13, &set(&[2, 3, 4])));
    }

    #[test]
    fn minimality() {
        let p4 = gen_path(4).unwrap();
        assert!(is_minimal_dominating(&p4, &set(&[1, 4])));
        let p3 = gen_path(3).unwrap();
        assert!(!is_minimal_dominating(&p3, &set(&[1, 2])));
        assert!(!is_minimal_dominating(&p3, &set(&[1])));
    }

    #[test]
    fn reduce_scans_ascending() {
        let p3 = gen_path(3).unwrap();
        let (s, removed) = reduce_to_minimal(&p3, &set(&[1, 2, 3])).unwrap();
        assert_eq!(s, set(&[2]));
        assert_eq!(removed, vec![0, 2]);

        let p4 = gen_path(4).unwrap();
        let (s, removed) = reduce_to_minimal(&p4, &set(&[1, 4])).unwrap();
        assert_eq!(s, set(&[1, 4]));
        assert!(removed.is_empty());

        // The center is the lowest removable id, so the leaves stay.
        let k13 = gen_star(3).unwrap();
        let (s, removed) = reduce_to_minimal(&k13, &set(&[1, 2, 3, 4])).unwrap();
        assert_eq!(s, set(&[2, 3, 4]));
        assert_eq!(removed, vec![0]);
        assert!(is_minimal_dominating(&k13, &s));

        assert!(matches!(
            reduce_to_minimal(&p3, &set(&[1])),
            Err(Error::NotDominating(_))
        ));
    }

    #[test]
    fn shrink_prefers_marked_vertices_and_stops_at_target() {
        let k13 = gen_star(3).unwrap();
        let (s, removed) = shrink(&k13, &set(&[1, 2, 3, 4]), 0, |v| v != 0).unwrap();
        assert_eq!(s, set(&[1]));
        assert_eq!(removed, vec![1, 2, 3]);
        let (s, _) = shrink(&k13, &set(&[1, 2, 3, 4]), 3, |v| v != 0).unwrap();
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn greedy_is() {
        let p4 = gen_path(4).unwrap();
        assert_eq!(greedy_maximal_is(&p4, &set(&[1, 3])).unwrap(), set(&[1, 3]));
        assert_eq!(greedy_maximal_is(&p4, &VertexSet::new()).unwrap(), set(&[1, 3]));
        let p3 = gen_path(3).unwrap();
        assert_eq!(greedy_maximal_is(&p3, &set(&[1, 3])).unwrap(), set(&[1, 3]));
        assert!(matches!(
            greedy_maximal_is(&p3, &set(&[1, 2])),
            Err(Error::NotIndependent(_))
        ));
    }
}
