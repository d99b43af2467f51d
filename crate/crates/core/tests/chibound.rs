mod common;

use common::arb_graph;
use proptest::prelude::*;
use twinstab::chibound::*;
use twinstab::contraction::{heuristic_sequence, verify_width, DEFAULT_BUDGET};
use twinstab::gen;
use twinstab::graph::{set_from, Graph};
use twinstab::oracle;

fn check(g: &Graph, c: &ChiCertificate) -> Result<(), TestCaseError> {
    c.verify(g).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(c.bound_ok());
    for class in 0..c.classes {
        let members: Vec<usize> = (0..g.n()).filter(|&v| c.class_of[v] == class).collect();
        prop_assert!(oracle::p4free(&g.induced(&members)));
        prop_assert!(cotree(g, &set_from(g.n(), members)).is_ok());
    }
    let col = c.coloring.as_ref().unwrap();
    prop_assert!(g.edges().all(|(u, v)| col.colors[u] != col.colors[v]));
    prop_assert!(col.count >= oracle::chromatic(g).unwrap());
    prop_assert!(col.count <= c.classes * col.omega);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn arbitrary_graphs(g in arb_graph(9)) {
        let t = heuristic_sequence(&g, DEFAULT_BUDGET);
        check(&g, &chi_bounded_color(&g, &t).unwrap())?;
    }

    #[test]
    fn bounded_width_graphs(n in 1usize..13, d in 0usize..3, seed: u64) {
        let (g, t) = gen::random_tww(n, d, &mut gen::rng(seed));
        let c = chi_bounded_color(&g, &t).unwrap();
        prop_assert!(c.d >= verify_width(&g, &t).unwrap().width);
        check(&g, &c)?;
    }
}

#[test]
fn cographs_within_bound() {
    let mut rng = gen::rng(5);
    for n in [1, 4, 10, 12] {
        let (g, t) = gen::cograph(n, &mut rng);
        let c = chi_bounded_color(&g, &t).unwrap();
        c.verify(&g).unwrap();
        assert!(c.bound_ok());
    }
    let k5 = twinstab::graph::Graph::complete(5);
    let c = chi_bounded_color(&k5, &heuristic_sequence(&k5, DEFAULT_BUDGET)).unwrap();
    assert_eq!((c.classes, c.coloring.unwrap().count), (1, 5));
}

#[test]
fn too_small_index_is_a_certified_failure() {
    let (h, t) = gen::half_graph(5);
    let err = chi_bounded_color_with(h.graph(), &t, 1).unwrap_err();
    assert!(err.is_certified_failure(), "{err}");
}
