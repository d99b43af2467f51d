mod common;

use common::{arb_bipartite, arb_graph};
use proptest::prelude::*;
use twinstab::contraction::*;
use twinstab::gen;
use twinstab::graph::{set_from, Graph};

fn refines_by_one_split(t: &MergeTree) -> bool {
    (1..t.num_partitions()).all(|i| {
        let (a, b) = (t.partition_at(i), t.partition_at(i + 1));
        b.len() == a.len() + 1 && b.iter().all(|p| a.iter().any(|q| p.is_subset(q)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn replay_gives_n_partitions(g in arb_graph(10)) {
        let t = heuristic_sequence(&g, DEFAULT_BUDGET);
        prop_assert_eq!(t.num_partitions(), g.n());
        prop_assert_eq!(t.partition_at(1).len(), 1);
        prop_assert_eq!(t.partition_at(g.n()).len(), g.n());
        prop_assert!(refines_by_one_split(&t));
        let back = MergeTree::from_contractions(g.n(), TreeKind::General, &t.to_contractions()).unwrap();
        prop_assert_eq!(verify_width(&g, &back).unwrap(), verify_width(&g, &t).unwrap());
    }

    #[test]
    fn restriction_never_widens(n in 2usize..14, d in 0usize..4, seed: u64, mask: u16) {
        let (g, t) = gen::random_tww(n, d, &mut gen::rng(seed));
        let keep = set_from(n, (0..n).filter(|v| mask >> v & 1 == 1));
        prop_assume!(!keep.is_clear());
        let kept: Vec<usize> = keep.ones().collect();
        let sub = g.induced(&kept);
        let w = verify_width(&g, &t).unwrap().width;
        prop_assert!(verify_width(&sub, &t.restrict(&keep).unwrap()).unwrap().width <= w);
    }

    #[test]
    fn convexify_gives_intervals(g in arb_bipartite(6)) {
        let t = heuristic_sequence(g.graph(), DEFAULT_BUDGET);
        let w = verify_width(g.graph(), &t).unwrap().width;
        let (og, ct) = convexify(&g, &t).unwrap();
        prop_assert_eq!(ct.kind(), TreeKind::Convex);
        let cw = verify_convex_width(&og, &ct).unwrap().width;
        for i in 1..=ct.num_partitions() {
            for p in ct.partition_at(i) {
                prop_assert!(og.is_convex(&p));
            }
        }
        // one more than the input width is not always reachable, two is
        prop_assert!(cw <= w + 2, "{} -> {}", w, cw);
    }

    #[test]
    fn exact_width_below_heuristic(g in arb_graph(7)) {
        let (exact, t) = exact_twinwidth(&g).unwrap();
        prop_assert_eq!(verify_width(&g, &t).unwrap().width, exact);
        let h = verify_width(&g, &heuristic_sequence(&g, DEFAULT_BUDGET)).unwrap().width;
        prop_assert!(exact <= h);
    }
}

#[test]
fn generated_sequences_have_advertised_width() {
    let mut rng = gen::rng(11);
    for n in [1, 5, 20, 40] {
        let (g, t) = gen::cograph(n, &mut rng);
        assert_eq!(verify_width(&g, &t).unwrap().width, 0);
        for d in 0..=3 {
            let (g, t) = gen::random_tww(n, d, &mut rng);
            assert!(verify_width(&g, &t).unwrap().width <= d);
        }
    }
    let p4 = Graph::path(4);
    assert_eq!(exact_twinwidth(&p4).unwrap().0, 1);
}
