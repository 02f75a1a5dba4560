//! Graph enumeration shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::HashSet;

use domrecon::{Graph, VertexSet};

/// Every labeled graph on `n` vertices, as edge masks over the pairs
/// `(i, j)`, `i < j`, in lexicographic order.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(n, edges).expect("valid labeled graph")
    })
}

/// Canonical code of a graph on at most 11 vertices: the largest
/// upper-triangle adjacency bit string over all labelings reachable by
/// individualization and equitable refinement.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 11);
    let adj: Vec<u16> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u16, |m, &w| m | 1 << w))
        .collect();
    let cells = refine(&adj, vec![(0..n).collect()]);
    let mut best = 0u64;
    search(&adj, cells, &mut best);
    best
}

fn refine(adj: &[u16], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<u16> = cells
            .iter()
            .map(|c| c.iter().fold(0u16, |m, &v| m | 1 << v))
            .collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| (masks.iter().map(|m| (adj[v] & m).count_ones()).collect(), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn search(adj: &[u16], cells: Vec<Vec<usize>>, best: &mut u64) {
    let Some(pos) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let mut code = 0u64;
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                code = code << 1 | u64::from(adj[order[i]] >> order[j] & 1);
            }
        }
        *best = (*best).max(code);
        return;
    };
    for &v in &cells[pos] {
        let mut split = cells[..pos].to_vec();
        split.push(vec![v]);
        split.push(cells[pos].iter().copied().filter(|&w| w != v).collect());
        split.extend_from_slice(&cells[pos + 1..]);
        search(adj, refine(adj, split), best);
    }
}

/// One representative per isomorphism class, for every order `1..=max_n`
/// (index `n − 1`), built by adding a vertex to each smaller class in every
/// possible way.
pub fn nonisomorphic_graphs(max_n: usize) -> Vec<Vec<Graph>> {
    let mut levels: Vec<Vec<Graph>> = vec![vec![Graph::from_edges(1, []).unwrap()]];
    for n in 2..=max_n {
        let mut seen = HashSet::new();
        let mut level = Vec::new();
        for base in &levels[n - 2] {
            for mask in 0u32..1 << (n - 1) {
                let edges = base
                    .edges()
                    .chain((0..n - 1).filter(|&v| mask >> v & 1 == 1).map(|v| (v, n - 1)));
                let g = Graph::from_edges(n, edges).unwrap();
                if seen.insert(canonical_code(&g)) {
                    level.push(g);
                }
            }
        }
        levels.push(level);
    }
    levels
}

/// All minimal dominating sets, by subset enumeration.
pub fn minimal_dominating_sets(g: &Graph) -> Vec<VertexSet> {
    assert!(g.n() <= 20);
    (0u64..1 << g.n())
        .map(VertexSet::from_mask)
        .filter(|s| domrecon::domination::is_minimal_dominating(g, s))
        .collect()
}
