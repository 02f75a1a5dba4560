use domrecon::instances::{gen_mynhardt, gen_mynhardt_td, gen_suzuki_planar};
use domrecon::minor_sparse::DensityWitness;
use domrecon::treewidth::TreeDecomposition;
use domrecon::{Error, Graph, Move, ReconfigSequence, VertexSet};

#[test]
fn graph_text_round_trip() {
    for g in [gen_mynhardt(3).unwrap(), gen_suzuki_planar()] {
        let back = Graph::parse(&g.to_text()).unwrap();
        assert_eq!(back.n(), g.n());
        assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }
}

#[test]
fn graph_parse_errors_carry_line_numbers() {
    let err = Graph::parse("c comment\np ds 3 2\ne 1 2\ne 2 2\n").unwrap_err();
    assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
    assert!(Graph::parse("p ds 3 2\ne 1 2\n").is_err());
    assert!(Graph::parse("p ds 3 1\ne 1 4\n").is_err());
}

#[test]
fn sequence_text_round_trip() {
    let seq = ReconfigSequence {
        start: VertexSet::from([0, 2]),
        moves: vec![Move::add(1), Move::remove(0), Move::remove(2)],
        k: 3,
    };
    let text = seq.to_text();
    assert_eq!(text, "s tar 3 3\nd 1 3\n+ 2\n- 1\n- 3\n");
    assert_eq!(ReconfigSequence::parse(&text).unwrap(), seq);
}

#[test]
fn decomposition_text_round_trip() {
    let td = gen_mynhardt_td(4).unwrap();
    let (back, n) = TreeDecomposition::parse(&td.to_text(17)).unwrap();
    assert_eq!((back, n), (td, 17));
}

#[test]
fn witness_parse_rejects_malformed_rows() {
    assert!(DensityWitness::parse("w density 2 1\na 1 b 4 5 x 6 7\n").is_ok());
    assert!(DensityWitness::parse("w density 2 2\na 1 b 4 5 x 6 7\n").is_err());
    assert!(DensityWitness::parse("w density 2 1\na 1 x 6 7 b 4 5\n").is_err());
    assert!(DensityWitness::parse("w density 2 1\na 0 b 4 5 x 6 7\n").is_err());
}
