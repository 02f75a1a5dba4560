use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::vertex_set::VertexSet;

/// Bags plus the edges of the tree over bag indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<VertexSet>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<VertexSet>, edges: Vec<(usize, usize)>) -> Self {
        Self { bags, edges }
    }

    /// Largest bag size minus one (`0` for no bags).
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1)
    }

    /// Every bag has at most two tree neighbors.
    pub fn is_path_shaped(&self) -> bool {
        let mut deg = vec![0usize; self.bags.len()];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg.iter().all(|&d| d <= 2)
    }

    /// Parses the PACE-style format and returns the declared vertex count.
    ///
    /// ```text
    /// s td <b> <max bag size> <n>
    /// b <id> <v> ...
    /// <i> <j>
    /// ```
    pub fn parse(text: &str) -> Result<(Self, usize)> {
        let mut header: Option<(usize, usize)> = None;
        let mut bags: Vec<Option<VertexSet>> = Vec::new();
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line == "c" || line.starts_with("c ") {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let num = |t: &str| -> Result<usize> {
                t.parse()
                    .map_err(|_| Error::parse(line_no, format!("bad number `{t}`")))
            };
            match toks[0] {
                "s" => {
                    if header.is_some() {
                        return Err(Error::parse(line_no, "duplicate header"));
                    }
                    if toks.len() != 5 || toks[1] != "td" {
                        return Err(Error::parse(line_no, "expected `s td <b> <w> <n>`"));
                    }
                    let b = num(toks[2])?;
                    header = Some((b, num(toks[4])?));
                    bags = vec![None; b];
                }
                "b" => {
                    let (b, n) = header.ok_or_else(|| Error::parse(line_no, "bag before header"))?;
                    if toks.len() < 2 {
                        return Err(Error::parse(line_no, "expected `b <id> <v> ...`"));
                    }
                    let id = num(toks[1])?;
                    if id == 0 || id > b {
                        return Err(Error::parse(line_no, format!("bag id {id} out of range")));
                    }
                    if bags[id - 1].is_some() {
                        return Err(Error::parse(line_no, format!("duplicate bag {id}")));
                    }
                    let set = VertexSet::parse(&toks[2..].join(" "), Some(n))
                        .map_err(|e| Error::parse(line_no, e.to_string()))?;
                    bags[id - 1] = Some(set);
                }
                _ => {
                    let (b, _) = header.ok_or_else(|| Error::parse(line_no, "edge before header"))?;
                    if toks.len() != 2 {
                        return Err(Error::parse(line_no, "expected `<i> <j>`"));
                    }
                    let (i, j) = (num(toks[0])?, num(toks[1])?);
                    if i == 0 || j == 0 || i > b || j > b {
                        return Err(Error::parse(line_no, "tree edge references unknown bag"));
                    }
                    edges.push((i - 1, j - 1));
                }
            }
        }
        let (_, n) = header.ok_or_else(|| Error::parse(0, "missing `s td` header"))?;
        let bags = bags
            .into_iter()
            .enumerate()
            .map(|(i, b)| b.ok_or_else(|| Error::parse(0, format!("bag {} missing", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        Ok((Self { bags, edges }, n))
    }

    pub fn to_text(&self, n: usize) -> String {
        let max_bag = self.bags.iter().map(|b| b.len()).max().unwrap_or(0);
        let mut out = format!("s td {} {} {}\n", self.bags.len(), max_bag, n);
        for (i, bag) in self.bags.iter().enumerate() {
            if bag.is_empty() {
                let _ = writeln!(out, "b {}", i + 1);
            } else {
                let _ = writeln!(out, "b {} {}", i + 1, bag);
            }
        }
        for &(i, j) in &self.edges {
            let _ = writeln!(out, "{} {}", i + 1, j + 1);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TdReport {
    pub valid: bool,
    pub issues: Vec<String>,
    pub width: usize,
}

/// Checks tree-ness plus vertex coverage, edge coverage and the
/// connected-subtree condition for every vertex.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> TdReport {
    let b = td.bags.len();
    let mut issues = Vec::new();
    for (i, bag) in td.bags.iter().enumerate() {
        if let Some(v) = bag.last().filter(|&v| v >= g.n()) {
            issues.push(format!("bag {} holds vertex {} beyond n = {}", i + 1, v + 1, g.n()));
        }
    }
    if b == 0 {
        issues.push("no bags".into());
    }

    let mut adj = vec![Vec::new(); b];
    let mut seen_edges = BTreeSet::new();
    for &(i, j) in &td.edges {
        if i >= b || j >= b {
            issues.push(format!("tree edge {} {} references unknown bag", i + 1, j + 1));
            continue;
        }
        if i == j {
            issues.push(format!("tree edge {} {} is a loop", i + 1, j + 1));
            continue;
        }
        if !seen_edges.insert((i.min(j), i.max(j))) {
            issues.push(format!("duplicate tree edge {} {}", i + 1, j + 1));
            continue;
        }
        adj[i].push(j);
        adj[j].push(i);
    }
    if b > 0 {
        let reached = reach(&adj, 0, |_| true);
        if td.edges.len() != b - 1 || reached.iter().filter(|&&r| r).count() != b {
            issues.push("bags do not form a tree".into());
        }
    }

    if issues.is_empty() {
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
        for (i, bag) in td.bags.iter().enumerate() {
            for v in bag {
                holders[v].push(i);
            }
        }
        for v in g.vertices() {
            if holders[v].is_empty() {
                issues.push(format!("vertex {} is in no bag", v + 1));
                continue;
            }
            let in_bag = |i: usize| td.bags[i].contains(v);
            let reached = reach(&adj, holders[v][0], in_bag);
            if holders[v].iter().any(|&i| !reached[i]) {
                issues.push(format!("bags holding vertex {} are not connected", v + 1));
            }
        }
        for (u, v) in g.edges() {
            if !holders[u].iter().any(|&i| td.bags[i].contains(v)) {
                issues.push(format!("edge {} {} is in no bag", u + 1, v + 1));
            }
        }
    }
    TdReport {
        valid: issues.is_empty(),
        issues,
        width: td.width(),
    }
}

/// Bags reachable from `start` through bags satisfying `keep`.
fn reach(adj: &[Vec<usize>], start: usize, keep: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(i) = stack.pop() {
        for &j in &adj[i] {
            if !seen[j] && keep(j) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen
}

/// A rooted decomposition with bags listed children-first (every child has
/// a smaller index than its parent; the root is last) and no bag contained
/// in an adjacent one.
#[derive(Clone, Debug)]
pub struct NormalizedTd {
    pub bags: Vec<VertexSet>,
    pub parent: Vec<Option<usize>>,
    pub width: usize,
    /// Input bag index each normalized bag came from.
    pub source: Vec<usize>,
    subtree_size: Vec<usize>,
    /// Highest-index bag holding each vertex.
    top: Vec<usize>,
}

impl NormalizedTd {
    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn root(&self) -> usize {
        self.bags.len() - 1
    }

    /// `i` lies in the subtree rooted at `j` (a bag descends from itself).
    /// Post-order numbering makes every subtree a contiguous index range.
    pub fn is_descendant(&self, i: usize, j: usize) -> bool {
        i <= j && i + self.subtree_size[j] > j
    }

    /// Index of the bag closest to the root that holds `v`.
    pub fn top(&self, v: Vertex) -> usize {
        self.top[v]
    }

    /// `v` appears only in bags descending from `X_j`.
    pub fn is_left(&self, v: Vertex, j: usize) -> bool {
        self.is_descendant(self.top[v], j)
    }

    /// `v` appears in no bag after `X_{j-1}`, i.e. it was retired before
    /// the sweep reaches `X_j`.
    pub fn is_retired_before(&self, v: Vertex, j: usize) -> bool {
        self.top[v] < j
    }

    /// Partition of the vertices into left and right vertices for `X_j`.
    pub fn classify_left(&self, j: usize) -> (VertexSet, VertexSet) {
        let (left, right): (Vec<Vertex>, Vec<Vertex>) =
            (0..self.top.len()).partition(|&v| self.is_left(v, j));
        (left.into_iter().collect(), right.into_iter().collect())
    }

    /// Checks that every graph edge between a left and a right vertex for
    /// `X_j` has its right endpoint in `X_j`.
    pub fn check_separation(&self, g: &Graph, j: usize) -> Result<()> {
        for (u, v) in g.edges() {
            for (l, r) in [(u, v), (v, u)] {
                if self.is_left(l, j) && !self.is_left(r, j) && !self.bags[j].contains(r) {
                    return Err(Error::ClaimViolated(format!(
                        "left vertex {} adjacent to right vertex {} outside bag {}",
                        l + 1,
                        r + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Validates `td`, contracts every tree edge whose bags are nested, roots
/// the tree at `root` (an input bag index; default the last input bag) and
/// orders bags children-first. Guarantees at most `n` bags.
pub fn normalize_td(g: &Graph, td: &TreeDecomposition, root: Option<usize>) -> Result<NormalizedTd> {
    let report = validate_td(g, td);
    if !report.valid {
        return Err(Error::InvalidDecomposition(report.issues.join("; ")));
    }
    let b = td.bags.len();
    let root = root.unwrap_or(b - 1);
    if root >= b {
        return Err(Error::InvalidDecomposition(format!("root bag {} does not exist", root + 1)));
    }

    let mut bags = td.bags.clone();
    let mut alive = vec![true; b];
    let mut rep: Vec<usize> = (0..b).collect();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); b];
    for &(i, j) in &td.edges {
        adj[i].insert(j);
        adj[j].insert(i);
    }
    // Contract nested neighbors until none remain; the larger bag survives.
    loop {
        let nested = (0..b).filter(|&i| alive[i]).find_map(|i| {
            adj[i]
                .iter()
                .copied()
                .find(|&j| bags[i].is_subset(&bags[j]))
                .map(|j| (i, j))
        });
        let Some((gone, keep)) = nested else { break };
        alive[gone] = false;
        rep[gone] = keep;
        let moved: Vec<usize> = adj[gone].iter().copied().filter(|&x| x != keep).collect();
        for x in moved {
            adj[x].remove(&gone);
            adj[x].insert(keep);
            adj[keep].insert(x);
        }
        adj[keep].remove(&gone);
        adj[gone].clear();
        bags[gone] = VertexSet::new();
    }
    let find = |mut i: usize| {
        while rep[i] != i {
            i = rep[i];
        }
        i
    };
    let root = find(root);

    // Post-order DFS, children in ascending input index.
    let mut order = Vec::new();
    let mut parent_in = vec![usize::MAX; b];
    let mut stack = vec![(root, false)];
    let mut visited = vec![false; b];
    visited[root] = true;
    while let Some((i, expanded)) = stack.pop() {
        if expanded {
            order.push(i);
            continue;
        }
        stack.push((i, true));
        for &j in adj[i].iter().rev() {
            if !visited[j] {
                visited[j] = true;
                parent_in[j] = i;
                stack.push((j, false));
            }
        }
    }
    let mut new_index = vec![usize::MAX; b];
    for (pos, &i) in order.iter().enumerate() {
        new_index[i] = pos;
    }
    let count = order.len();
    let parent: Vec<Option<usize>> = order
        .iter()
        .map(|&i| (parent_in[i] != usize::MAX).then(|| new_index[parent_in[i]]))
        .collect();
    let mut subtree_size = vec![1usize; count];
    for pos in 0..count {
        if let Some(p) = parent[pos] {
            subtree_size[p] += subtree_size[pos];
        }
    }
    let new_bags: Vec<VertexSet> = order.iter().map(|&i| bags[i].clone()).collect();
    let mut top = vec![0usize; g.n()];
    for (pos, bag) in new_bags.iter().enumerate() {
        for v in bag {
            top[v] = pos;
        }
    }
    if count > g.n() {
        return Err(Error::ClaimViolated(format!(
            "normalized decomposition has {count} bags for {} vertices",
            g.n()
        )));
    }
    Ok(NormalizedTd {
        width: new_bags.iter().map(|b| b.len()).max().unwrap_or(1) - 1,
        bags: new_bags,
        parent,
        source: order,
        subtree_size,
        top,
    })
}

/// Optimal-width tree decomposition by dynamic programming over vertex
/// subsets (elimination orderings). `O(2^n · n^3)`; for small graphs only.
pub fn exact_tree_decomposition(g: &Graph, limit: usize) -> Result<TreeDecomposition> {
    let n = g.n();
    if n > limit || n > 24 {
        return Err(Error::GraphTooLarge { n, limit: limit.min(24) });
    }
    let adj: Vec<u32> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    // |Q(S, v)|: vertices outside S ∪ {v} reachable from v through S.
    let q_size = |s: u32, v: usize| -> u32 {
        let mut inside = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut outside = 0u32;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nb = adj[u] & !inside;
            outside |= nb & !s;
            let grow = nb & s;
            inside |= grow;
            frontier |= grow;
        }
        (outside & !(1 << v)).count_ones()
    };
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut best = vec![u32::MAX; 1 << n];
    let mut choice = vec![0u8; 1 << n];
    best[0] = 0;
    for s in 1..=full {
        let mut m = s;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let rest = s & !(1 << v);
            let cost = best[rest as usize].max(q_size(rest, v));
            if cost < best[s as usize] {
                best[s as usize] = cost;
                choice[s as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    Ok(td_from_elimination(g, &order))
}

/// Decomposition induced by eliminating vertices in `order` with fill-in.
fn td_from_elimination(g: &Graph, order: &[Vertex]) -> TreeDecomposition {
    let n = g.n();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut nbrs: Vec<BTreeSet<Vertex>> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<Vertex> = nbrs[v].iter().copied().filter(|&w| pos[w] > i).collect();
        for &a in &later {
            for &b in &later {
                if a != b {
                    nbrs[a].insert(b);
                }
            }
        }
        let mut bag: VertexSet = later.iter().copied().collect();
        bag.insert(v);
        bags.push(bag);
        match later.iter().min_by_key(|&&w| pos[w]) {
            Some(&w) => edges.push((i, pos[w])),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition::new(bags, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::*;

    fn p3_td(edges: Vec<(usize, usize)>) -> TreeDecomposition {
        TreeDecomposition::new(vec![VertexSet::from([0, 1]), VertexSet::from([1, 2])], edges)
    }

    #[test]
    fn validate_small_cases() {
        let p3 = gen_path(3).unwrap();
        let rep = validate_td(&p3, &p3_td(vec![(0, 1)]));
        assert!(rep.valid);
        assert_eq!(rep.width, 1);
        assert!(!validate_td(&p3, &p3_td(vec![])).valid);
        let split = TreeDecomposition::new(
            vec![VertexSet::from([0, 1]), VertexSet::from([2])],
            vec![(0, 1)],
        );
        let rep = validate_td(&p3, &split);
        assert!(!rep.valid);
        assert!(rep.issues.iter().any(|i| i.contains("edge 2 3")));
        // vertex 2 in two bags that are not adjacent through holders
        let broken = TreeDecomposition::new(
            vec![
                VertexSet::from([0, 1]),
                VertexSet::from([2]),
                VertexSet::from([1, 2]),
            ],
            vec![(0, 1), (1, 2)],
        );
        assert!(!validate_td(&p3, &broken).valid);
    }

    #[test]
    fn normalization_merges_nested_bags() {
        let p3 = gen_path(3).unwrap();
        let td = TreeDecomposition::new(
            vec![VertexSet::from([0, 1]), VertexSet::from([0, 1]), VertexSet::from([1, 2])],
            vec![(0, 1), (1, 2)],
        );
        let norm = normalize_td(&p3, &td, None).unwrap();
        assert_eq!(norm.bags, vec![VertexSet::from([0, 1]), VertexSet::from([1, 2])]);
        assert_eq!(norm.parent, vec![Some(1), None]);
    }

    #[test]
    fn star_shaped_order_is_leaves_first() {
        let g = gen_star(3).unwrap();
        let td = TreeDecomposition::new(
            vec![
                VertexSet::from([0, 1]),
                VertexSet::from([0, 2]),
                VertexSet::from([0, 3]),
                VertexSet::from([0]),
            ],
            vec![(0, 1), (0, 2), (0, 3)],
        );
        // {1} is nested in its neighbor and disappears; rooting at the first
        // bag puts the other two before it.
        let norm = normalize_td(&g, &td, Some(0)).unwrap();
        assert_eq!(norm.len(), 3);
        assert_eq!(norm.source.last(), Some(&0));
        assert!(norm.parent[..2].iter().all(|&p| p == Some(2)));
    }

    #[test]
    fn mynhardt_normalizes_within_n() {
        let g = gen_mynhardt(3).unwrap();
        let norm = normalize_td(&g, &gen_mynhardt_td(3).unwrap(), None).unwrap();
        assert_eq!(norm.len(), 7);
        assert!(norm.len() <= g.n());
        assert_eq!(norm.width, 3);
        for j in 0..norm.len() {
            if let Some(p) = norm.parent[j] {
                assert!(j < p);
            }
            norm.check_separation(&g, j).unwrap();
        }
    }

    #[test]
    fn left_right_classification() {
        let p3 = gen_path(3).unwrap();
        let norm = normalize_td(&p3, &p3_td(vec![(0, 1)]), None).unwrap();
        let (left, right) = norm.classify_left(0);
        assert_eq!(left, VertexSet::from([0]));
        assert_eq!(right, VertexSet::from([1, 2]));
        let (left, right) = norm.classify_left(norm.root());
        assert_eq!(left, p3.all_vertices());
        assert!(right.is_empty());
    }

    #[test]
    fn exact_widths() {
        let cases = [
            (gen_path(6).unwrap(), 1),
            (gen_cycle(6).unwrap(), 2),
            (gen_complete(5).unwrap(), 4),
            (gen_grid(3, 3).unwrap(), 3),
            (gen_mynhardt(3).unwrap(), 3),
            (Graph::from_edges(3, [(0, 1)]).unwrap(), 1),
        ];
        for (g, w) in cases {
            let td = exact_tree_decomposition(&g, 16).unwrap();
            let rep = validate_td(&g, &td);
            assert!(rep.valid, "{:?}", rep.issues);
            assert_eq!(rep.width, w);
        }
    }

    #[test]
    fn file_format_round_trip() {
        let td = gen_mynhardt_td(3).unwrap();
        let text = td.to_text(10);
        assert!(text.starts_with("s td 7 4 10\nb 1 1 2 3 4\n"));
        let (back, n) = TreeDecomposition::parse(&text).unwrap();
        assert_eq!(n, 10);
        assert_eq!(back, td);
        assert!(TreeDecomposition::parse("s td 1 1 2\nb 2 1\n").is_err());
        assert!(TreeDecomposition::parse("s td 2 1 2\nb 1 1\n").is_err());
        assert!(TreeDecomposition::parse("s td 1 1 2\nb 1 3\n").is_err());
    }
}
