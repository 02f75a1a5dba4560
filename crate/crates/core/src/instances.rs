//! Deterministic generators for the instance families used in tests and by
//! the `gen` subcommand. Every generator fixes its vertex numbering so files
//! and oracle outputs are stable across runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::treewidth::TreeDecomposition;
use crate::vertex_set::VertexSet;

/// `K_{1,n}`: center is vertex 1, leaves are 2..=n+1 (1-based).
pub fn gen_star(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::Precondition("star needs n >= 1".into()));
    }
    Graph::from_edges(n + 1, (1..=n).map(|leaf| (0, leaf)))
}

pub fn gen_path(n: usize) -> Result<Graph> {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
}

pub fn gen_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Precondition("cycle needs n >= 3".into()));
    }
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
}

pub fn gen_complete(n: usize) -> Result<Graph> {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `rows × cols` grid, row-major numbering.
pub fn gen_grid(rows: usize, cols: usize) -> Result<Graph> {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_edges(rows * cols, edges)
}

/// Uniform random labeled tree on `n` vertices from a seeded Prüfer sequence.
pub fn gen_random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n < 3 {
        return gen_path(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &code {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &code {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf always exists");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<Vertex> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, edges)
}

fn check_ell(ell: usize) -> Result<()> {
    if ell < 3 {
        return Err(Error::Precondition(format!("ell must be >= 3, got {ell}")));
    }
    Ok(())
}

/// 0-based id of `c_i^j` (`i = 0` is the outer clique, `j` in `1..=ell`).
fn clique_vertex(ell: usize, i: usize, j: usize) -> Vertex {
    i * ell + j
}

/// The graph `G_{ℓ,ℓ−1}`.
///
/// `u_0` is vertex 1; the outer clique `C_0` is 2..=ℓ+1; inner clique `C_i`
/// takes the next ℓ ids for `i = 1..ℓ−1`. Edges: every clique, `u_0` to all
/// of `C_0`, and the matchings joining `c_i^j` to `c_0^j`. `n = ℓ² + 1`.
pub fn gen_mynhardt(ell: usize) -> Result<Graph> {
    check_ell(ell)?;
    let mut edges = Vec::new();
    for j in 1..=ell {
        edges.push((0, clique_vertex(ell, 0, j)));
    }
    for i in 0..ell {
        for j in 1..=ell {
            for j2 in j + 1..=ell {
                edges.push((clique_vertex(ell, i, j), clique_vertex(ell, i, j2)));
            }
            if i > 0 {
                edges.push((clique_vertex(ell, i, j), clique_vertex(ell, 0, j)));
            }
        }
    }
    Graph::from_edges(ell * ell + 1, edges)
}

/// Width-ℓ tree decomposition of `G_{ℓ,ℓ−1}`: a central bag `C_0 ∪ {u_0}`
/// with, per inner clique `C_i`, an attached path of bags
/// `B_i^j = (C_0 ∖ {c_0^1..c_0^{j−1}}) ∪ {c_i^1..c_i^j}`.
pub fn gen_mynhardt_td(ell: usize) -> Result<TreeDecomposition> {
    check_ell(ell)?;
    let mut bags = vec![central_bag(ell)];
    let mut edges = Vec::new();
    for i in 1..ell {
        for j in 1..=ell {
            let bag: VertexSet = (j..=ell)
                .map(|k| clique_vertex(ell, 0, k))
                .chain((1..=j).map(|k| clique_vertex(ell, i, k)))
                .collect();
            let parent = if j == 1 { 0 } else { bags.len() - 1 };
            edges.push((parent, bags.len()));
            bags.push(bag);
        }
    }
    Ok(TreeDecomposition::new(bags, edges))
}

/// Width-(2ℓ−1) path decomposition of `G_{ℓ,ℓ−1}`:
/// `C_0 ∪ {u_0}`, then `C_0 ∪ C_i` for each inner clique, in a path.
pub fn gen_mynhardt_pd(ell: usize) -> Result<TreeDecomposition> {
    check_ell(ell)?;
    let mut bags = vec![central_bag(ell)];
    for i in 1..ell {
        bags.push(
            (1..=ell)
                .flat_map(|j| [clique_vertex(ell, 0, j), clique_vertex(ell, i, j)])
                .collect(),
        );
    }
    let edges = (1..bags.len()).map(|b| (b - 1, b)).collect();
    Ok(TreeDecomposition::new(bags, edges))
}

fn central_bag(ell: usize) -> VertexSet {
    std::iter::once(0)
        .chain((1..=ell).map(|j| clique_vertex(ell, 0, j)))
        .collect()
}

/// The nine-vertex planar graph whose `R_{Γ+1}` is disconnected.
///
/// Three nested triangles: outer `a1 a2 a3` = 1,2,3, middle `b1 b2 b3` =
/// 4,5,6, inner `c1 c2 c3` = 7,8,9, plus the spokes `a_i b_i` and `b_i c_i`.
///
/// Planar embedding: draw the three triangles concentrically and route each
/// spoke radially inside the annulus between consecutive triangles; spokes
/// of different indices sit at different angles, so nothing crosses.
pub fn gen_suzuki_planar() -> Graph {
    let mut edges = Vec::new();
    for t in 0..3 {
        let base = 3 * t;
        edges.extend([(base, base + 1), (base + 1, base + 2), (base, base + 2)]);
    }
    for i in 0..3 {
        edges.push((i, i + 3));
        edges.push((i + 3, i + 6));
    }
    Graph::from_edges(9, edges).expect("fixed edge list is simple")
}

/// Width-1 decomposition of a forest: one bag `{v, parent(v)}` per non-root
/// vertex, attached to its parent's bag; bags of a root's children are
/// chained so the root's bags stay connected. Components are chained too.
pub fn forest_td(g: &Graph) -> Result<TreeDecomposition> {
    if !g.is_forest() {
        return Err(Error::Precondition("graph is not a forest".into()));
    }
    if g.m() == 0 {
        // isolated vertices: one singleton bag each, in a path
        let bags: Vec<VertexSet> = g.vertices().map(VertexSet::singleton).collect();
        let edges = (1..bags.len()).map(|b| (b - 1, b)).collect();
        return Ok(TreeDecomposition::new(bags, edges));
    }
    let n = g.n();
    let mut bag_of = vec![usize::MAX; n];
    let mut bags: Vec<VertexSet> = Vec::new();
    let mut edges = Vec::new();
    let mut seen = vec![false; n];
    // first bag of the previous component, to chain components together
    let mut prev_anchor: Option<usize> = None;
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut anchor: Option<usize> = None;
        let mut root_chain: Option<usize> = None;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if seen[v] {
                    continue;
                }
                seen[v] = true;
                let id = bags.len();
                bags.push(VertexSet::from([u, v]));
                bag_of[v] = id;
                if u == root {
                    if let Some(prev) = root_chain {
                        edges.push((prev, id));
                    }
                    root_chain = Some(id);
                } else {
                    edges.push((bag_of[u], id));
                }
                anchor.get_or_insert(id);
                stack.push(v);
            }
        }
        let anchor = match anchor {
            Some(a) => a,
            None => {
                bags.push(VertexSet::singleton(root));
                bags.len() - 1
            }
        };
        if let Some(prev) = prev_anchor {
            edges.push((prev, anchor));
        }
        prev_anchor = Some(anchor);
    }
    Ok(TreeDecomposition::new(bags, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::{is_dominating, is_minimal_dominating};
    use crate::treewidth::validate_td;

    #[test]
    fn small_families() {
        let s = gen_star(3).unwrap();
        assert_eq!((s.n(), s.m()), (4, 3));
        assert!(gen_star(0).is_err());
        assert_eq!(gen_path(6).unwrap().m(), 5);
        let c4 = gen_grid(2, 2).unwrap();
        assert_eq!((c4.n(), c4.m()), (4, 4));
        assert!(c4.vertices().all(|v| c4.degree(v) == 2));
        assert_eq!(gen_grid(4, 5).unwrap().m(), 31);
    }

    #[test]
    fn random_tree_is_reproducible_tree() {
        let a = gen_random_tree(10, 42).unwrap();
        let b = gen_random_tree(10, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.m(), 9);
        assert!(a.is_connected());
        assert_ne!(a, gen_random_tree(10, 43).unwrap());
    }

    #[test]
    fn mynhardt_structure() {
        for ell in 3..=5 {
            let g = gen_mynhardt(ell).unwrap();
            assert_eq!(g.n(), ell * ell + 1);
            // ℓ cliques of size ℓ, ℓ edges at u_0, (ℓ−1)·ℓ matching edges
            assert_eq!(g.m(), ell * ell * (ell - 1) / 2 + ell + (ell - 1) * ell);
            for i in 0..ell {
                for j in 1..=ell {
                    for j2 in j + 1..=ell {
                        assert!(g.has_edge(clique_vertex(ell, i, j), clique_vertex(ell, i, j2)));
                    }
                }
            }
            let u0: Vec<_> = g.neighbors(0).to_vec();
            assert_eq!(u0, (1..=ell).collect::<Vec<_>>());
        }
        assert_eq!(gen_mynhardt(3).unwrap().m(), 18);
        assert!(gen_mynhardt(2).is_err());
    }

    #[test]
    fn mynhardt_decompositions() {
        for ell in 3..=5 {
            let g = gen_mynhardt(ell).unwrap();
            let td = gen_mynhardt_td(ell).unwrap();
            assert_eq!(td.bags.len(), 1 + (ell - 1) * ell);
            assert!(td.bags.iter().all(|b| b.len() == ell + 1));
            let rep = validate_td(&g, &td);
            assert!(rep.valid, "{:?}", rep.issues);
            assert_eq!(rep.width, ell);

            let pd = gen_mynhardt_pd(ell).unwrap();
            assert_eq!(pd.bags.len(), ell);
            let rep = validate_td(&g, &pd);
            assert!(rep.valid, "{:?}", rep.issues);
            assert_eq!(rep.width, 2 * ell - 1);
            assert!(pd.is_path_shaped());
        }
        let sizes: Vec<usize> = gen_mynhardt_pd(3).unwrap().bags.iter().map(|b| b.len()).collect();
        assert_eq!(sizes, vec![4, 6, 6]);
    }

    #[test]
    fn suzuki_graph() {
        let g = gen_suzuki_planar();
        assert_eq!((g.n(), g.m()), (9, 15));
        assert!(g.m() <= 3 * g.n() - 6);
        assert!(is_minimal_dominating(&g, &VertexSet::from([3, 4, 5])));
        assert!(!is_dominating(&g, &VertexSet::from([0, 1, 2])));
        assert!(!is_dominating(&g, &VertexSet::from([6, 7, 8])));
    }

    #[test]
    fn forest_decompositions_are_valid() {
        for seed in 0..20 {
            let g = gen_random_tree(15, seed).unwrap();
            let td = forest_td(&g).unwrap();
            let rep = validate_td(&g, &td);
            assert!(rep.valid, "{:?}", rep.issues);
            assert_eq!(rep.width, 1);
        }
        let forest = Graph::from_edges(5, [(0, 1), (2, 3)]).unwrap();
        assert!(validate_td(&forest, &forest_td(&forest).unwrap()).valid);
        assert!(forest_td(&gen_cycle(4).unwrap()).is_err());
    }
}
