mod common;

use common::{arb_graph, arb_order};
use proptest::prelude::*;
use twinstab::colnum::*;
use twinstab::gen;
use twinstab::graph::Graph;

fn graph_and_order(max: usize) -> impl Strategy<Value = OrderedGraph> {
    arb_graph(max).prop_flat_map(|g| {
        let n = g.n();
        arb_order(n).prop_map(move |o| OrderedGraph::new(g.clone(), o).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn weak_two_bounded_by_strong(g in graph_and_order(14)) {
        let (s1, s2, w2) = (scol(&g, 1), scol(&g, 2), wcol(&g, 2));
        prop_assert!(w2 <= s2 + (s1 - 1) * (s1 - 1));
    }

    #[test]
    fn strong_below_weak(g in graph_and_order(12), r in 1usize..4) {
        prop_assert!(scol(&g, r) <= wcol(&g, r));
        prop_assert_eq!(scol(&g, 1), wcol(&g, 1));
        prop_assert_eq!(scol(&g, 1), g.degeneracy() + 1);
    }

    #[test]
    fn star_coloring_palette_is_weak_two(g in graph_and_order(14)) {
        let c = star_coloring(&g);
        prop_assert_eq!(c.palette, wcol(&g, 2));
        prop_assert!(c.used() <= c.palette);
        prop_assert!(verify_star_coloring(&g, &c.colors));
    }
}

#[test]
fn path_in_natural_order() {
    let p = OrderedGraph::natural(Graph::path(6));
    assert_eq!(scol(&p, 1), 2);
    assert_eq!(wcol(&p, 2), 3);
}

#[test]
fn companion_four_colouring() {
    for n in [16, 64, 256] {
        let (g, colors) = gen::power_companion(n).unwrap();
        assert!(colors.iter().all(|&c| c < 4));
        assert!(verify_star_coloring(&g, &colors));
    }
    let (g, mut colors) = gen::power_companion(16).unwrap();
    colors[0] = 0;
    assert!(!verify_star_coloring(&g, &colors));
}
