mod common;

use common::{arb_bipartite, arb_graph};
use proptest::prelude::*;
use twinstab::graph::{double_cover, full_set, BipartiteGraph, Graph};
use twinstab::ladder::*;

// plain enumeration over both alternatives, repeats allowed
fn brute_quasi(g: &Graph, xs: &[usize], ys: &[usize]) -> usize {
    fn go(g: &Graph, xs: &[usize], ys: &[usize], px: &mut Vec<usize>, py: &mut Vec<usize>, cap: usize) -> usize {
        if px.len() == cap {
            return cap;
        }
        let mut best = px.len();
        for &x in xs {
            for &y in ys {
                let plus = py.iter().all(|&b| g.has_edge(x, b)) && px.iter().all(|&a| !g.has_edge(a, y));
                let minus = py.iter().all(|&b| !g.has_edge(x, b)) && px.iter().all(|&a| g.has_edge(a, y));
                if plus || minus {
                    px.push(x);
                    py.push(y);
                    best = best.max(go(g, xs, ys, px, py, cap));
                    px.pop();
                    py.pop();
                    if best == cap {
                        return best;
                    }
                }
            }
        }
        best
    }
    let cap = 2 * xs.len().min(ys.len()) + 1;
    go(g, xs, ys, &mut Vec::new(), &mut Vec::new(), cap)
}

fn brute_ladder(g: &BipartiteGraph) -> usize {
    let l: Vec<usize> = g.left().ones().collect();
    let r: Vec<usize> = g.right().ones().collect();
    fn go(g: &Graph, l: &[usize], r: &[usize], px: &mut Vec<usize>, py: &mut Vec<usize>) -> usize {
        let mut best = px.len();
        for &x in l {
            for &y in r {
                if px.contains(&x) || py.contains(&y) {
                    continue;
                }
                // appended pair becomes the last index
                let ok = g.has_edge(x, y)
                    && py.iter().all(|&b| !g.has_edge(x, b))
                    && px.iter().all(|&a| g.has_edge(a, y));
                if ok {
                    px.push(x);
                    py.push(y);
                    best = best.max(go(g, l, r, px, py));
                    px.pop();
                    py.pop();
                }
            }
        }
        best
    }
    go(g.graph(), &l, &r, &mut Vec::new(), &mut Vec::new())
}

#[test]
fn half_graph_indices() {
    for n in 1..=6 {
        let edges: Vec<_> = (0..n).flat_map(|i| (i..n).map(move |j| (i, n + j))).collect();
        let h = BipartiteGraph::from_sides(n, n, edges).unwrap();
        assert_eq!(ladder_index(&h).unwrap(), n);
        let q = quasi_ladder_index(&h).unwrap();
        let l: Vec<usize> = (0..n).collect();
        let r: Vec<usize> = (n..2 * n).collect();
        assert_eq!(q, brute_quasi(h.graph(), &l, &r));
    }
}

#[test]
fn five_cycle_index() {
    let c5 = Graph::cycle(5);
    let all: Vec<usize> = (0..5).collect();
    assert_eq!(graph_quasi_index(&c5).unwrap(), brute_quasi(&c5, &all, &all));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn quasi_index_matches_enumeration(g in arb_bipartite(5)) {
        let l: Vec<usize> = g.left().ones().collect();
        let r: Vec<usize> = g.right().ones().collect();
        let k = quasi_ladder_index(&g).unwrap();
        prop_assert_eq!(k, brute_quasi(g.graph(), &l, &r));
        if let Some(w) = quasi_ladder_at_least(&g, k) {
            prop_assert!(w.is_valid(&g));
        }
        prop_assert!(quasi_ladder_at_least(&g, k + 1).is_none());
    }

    #[test]
    fn ladder_index_matches_enumeration(g in arb_bipartite(5)) {
        prop_assert_eq!(ladder_index(&g).unwrap(), brute_ladder(&g));
    }

    #[test]
    fn sandwich(g in arb_bipartite(6)) {
        let l = ladder_index(&g).unwrap();
        let q = quasi_ladder_index(&g).unwrap();
        prop_assert!(l <= q && q <= 4 * l + 4);
    }

    #[test]
    fn graph_index_on_overlapping_sides(g in arb_graph(5)) {
        let all: Vec<usize> = (0..g.n()).collect();
        let k = graph_quasi_index(&g).unwrap();
        prop_assert_eq!(k, brute_quasi(&g, &all, &all));
        prop_assert_eq!(k, quasi_ladder_index(&double_cover(&g)).unwrap());
        prop_assert!(!graph_index_at_least(&g, &full_set(g.n()), k + 1));
    }

    #[test]
    fn thresholds_are_monotone(g in arb_bipartite(6), k in 1usize..6) {
        if quasi_ladder_at_least(&g, k).is_some() {
            for j in 0..k {
                prop_assert!(quasi_ladder_at_least(&g, j).is_some());
            }
        }
    }

    #[test]
    fn witnesses_in_subsets_persist(g in arb_bipartite(6), drop_l in 0usize..6, drop_r in 0usize..6, k in 1usize..5) {
        let mut a = g.left().clone();
        let mut b = g.right().clone();
        if let Some(v) = a.ones().nth(drop_l) { a.set(v, false); }
        if let Some(v) = b.ones().nth(drop_r) { b.set(v, false); }
        if let Some(w) = quasi_ladder_at_least_in(g.graph(), &a, &b, k) {
            prop_assert!(w.order() == k && w.is_valid(&g));
            prop_assert!(w.xs.iter().all(|&x| a.contains(x)) && w.ys.iter().all(|&y| b.contains(y)));
            prop_assert!(quasi_ladder_at_least(&g, k).is_some());
        }
    }
}
