use proptest::prelude::*;
use twinstab::gen;
use twinstab::graph::Graph;
use twinstab::sparsify::{decode_gadget, encode_gadget, pipeline, pipeline_bipartite, PipelineReport};

fn sound(rep: &PipelineReport) -> bool {
    rep.equal && rep.structural && rep.biclique_free != Some(false) && rep.depth <= rep.k
}

#[test]
fn half_graphs_round_trip() {
    for n in 1..=8 {
        let (g, t) = gen::half_graph(n);
        let (_, rep) = pipeline_bipartite(&g, &t).unwrap();
        assert!(sound(&rep), "{rep:?}");
    }
}

#[test]
fn larger_cograph_and_random() {
    let mut rng = gen::rng(5);
    let (g, t) = gen::cograph(30, &mut rng);
    let (_, rep) = pipeline(&g, &t).unwrap();
    assert!(sound(&rep), "{rep:?}");
    let (g, t) = gen::random_tww(30, 3, &mut rng);
    let (_, rep) = pipeline(&g, &t).unwrap();
    assert!(sound(&rep), "{rep:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gadget_round_trip(n in 0usize..30, edges in proptest::collection::vec((0usize..30, 0usize..30), 0..80)) {
        let edges: Vec<_> = edges.into_iter().filter(|&(u, v)| u < n && v < n && u != v).collect();
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        let b = encode_gadget(&g);
        prop_assert_eq!(decode_gadget(&b).unwrap(), g);
    }

    #[test]
    fn random_graphs_round_trip(n in 1usize..20, d in 0usize..4, seed: u64) {
        let mut rng = gen::rng(seed);
        let (g, t) = gen::random_tww(n, d, &mut rng);
        let (_, rep) = pipeline(&g, &t).unwrap();
        prop_assert!(sound(&rep), "{:?}", rep);
    }
}
