mod support;

use proptest::prelude::*;

use domrecon::domination::{greedy_maximal_is, is_dominating, is_minimal_dominating, reduce_to_minimal};
use domrecon::general::general_transform;
use domrecon::instances::{forest_td, gen_random_tree};
use domrecon::invariants::forest_upper_domination;
use domrecon::minor_sparse::minor_sparse_transform;
use domrecon::treewidth::{exact_tree_decomposition, treewidth_transform, validate_td};
use domrecon::{exact_invariants, verify_sequence, Graph, Move, ReconfigSequence, VertexSet};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_filter("connected", |g| g.is_connected())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduction_yields_minimal_subset(g in arb_graph(10), seed in any::<u64>()) {
        let mut s = g.all_vertices();
        for v in g.vertices() {
            if seed >> v & 1 == 1 {
                s.remove(v);
                if !is_dominating(&g, &s) {
                    s.insert(v);
                }
            }
        }
        let (m, removed) = reduce_to_minimal(&g, &s).unwrap();
        prop_assert!(is_minimal_dominating(&g, &m));
        prop_assert!(m.is_subset(&s));
        prop_assert_eq!(m.len() + removed.len(), s.len());
    }

    #[test]
    fn greedy_independent_sets_dominate_minimally(g in arb_graph(12), v in 0usize..12) {
        let seed = if v < g.n() { VertexSet::singleton(v) } else { VertexSet::new() };
        let s = greedy_maximal_is(&g, &seed).unwrap();
        prop_assert!(is_minimal_dominating(&g, &s));
    }

    #[test]
    fn reversal_is_an_involution(moves in proptest::collection::vec((any::<bool>(), 0usize..6), 0..12)) {
        let g = Graph::from_edges(6, (0..5).map(|i| (i, i + 1))).unwrap();
        let start = g.all_vertices();
        let mut cur = start.clone();
        let mut legal = Vec::new();
        for (add, v) in moves {
            let mv = if add { Move::add(v) } else { Move::remove(v) };
            let mut next = cur.clone();
            let ok = if add { next.insert(v) } else { next.remove(v) };
            if ok {
                legal.push(mv);
                cur = next;
            }
        }
        let seq = ReconfigSequence { start: start.clone(), moves: legal, k: 6 };
        let rev = seq.reversed().unwrap();
        prop_assert_eq!(rev.start.clone(), cur);
        prop_assert_eq!(rev.end().unwrap(), start);
        prop_assert_eq!(rev.reversed().unwrap(), seq.clone());
        let valid = verify_sequence(&g, &seq, None).valid;
        prop_assert_eq!(verify_sequence(&g, &rev, None).valid, valid);
    }

    #[test]
    fn general_transform_verifies(g in arb_connected(7), a in any::<u64>(), b in any::<u64>()) {
        let inv = exact_invariants(&g, 24).unwrap();
        prop_assume!(inv.alpha >= 2);
        let pick = |seed: u64| greedy_maximal_is(&g, &VertexSet::singleton(seed as usize % g.n())).unwrap();
        let (ds, dt) = (pick(a), pick(b));
        let seq = general_transform(&g, &ds, &dt, &inv).unwrap();
        let rep = verify_sequence(&g, &seq, Some(&dt));
        prop_assert!(rep.valid);
        prop_assert!(rep.length < 10 * g.n());
    }

    #[test]
    fn tree_constructions_verify(n in 3usize..30, seed in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let g = gen_random_tree(n, seed).unwrap();
        let gamma = forest_upper_domination(&g).unwrap();
        let pick = |s: u64| greedy_maximal_is(&g, &VertexSet::singleton(s as usize % n)).unwrap();
        let (ds, dt) = (pick(a), pick(b));

        let seq = minor_sparse_transform(&g, &ds, &dt, 2, gamma).unwrap();
        prop_assert!(verify_sequence(&g, &seq, Some(&dt)).valid);
        prop_assert!(seq.len() <= 2 * gamma + 2 * (gamma - 1));

        let out = treewidth_transform(&g, &forest_td(&g).unwrap(), &ds, &dt, gamma, None, None).unwrap();
        prop_assert!(verify_sequence(&g, &out.sequence, Some(&dt)).valid);
        prop_assert_eq!(out.sequence.k, gamma + 2);
        prop_assert!(out.sequence.len() <= 8 * (n + 1));
    }

    #[test]
    fn exact_decompositions_are_valid(g in arb_graph(9)) {
        let td = exact_tree_decomposition(&g, 10).unwrap();
        prop_assert!(validate_td(&g, &td).valid);
    }
}

#[test]
fn enumeration_counts_match_known_values() {
    let levels = support::nonisomorphic_graphs(6);
    let all: Vec<usize> = levels.iter().map(|l| l.len()).collect();
    assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
    assert_eq!(support::labeled_graphs(4).count(), 64);
}

#[test]
fn cycles_have_width_two() {
    for n in 3..=9 {
        let g = Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap();
        assert_eq!(validate_td(&g, &exact_tree_decomposition(&g, 10).unwrap()).width, 2);
    }
}
