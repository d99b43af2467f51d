#![allow(dead_code)]

use proptest::prelude::*;
use twinstab::graph::{BipartiteGraph, Graph};

pub fn bipartite(nl: usize, nr: usize, bits: &[bool]) -> BipartiteGraph {
    let edges: Vec<_> = (0..nl)
        .flat_map(|i| (0..nr).map(move |j| (i, j)))
        .filter(|&(i, j)| bits[i * nr + j])
        .map(|(i, j)| (i, nl + j))
        .collect();
    BipartiteGraph::from_sides(nl, nr, edges).unwrap()
}

pub fn arb_bipartite(max: usize) -> impl Strategy<Value = BipartiteGraph> {
    (1..=max, 1..=max).prop_flat_map(|(nl, nr)| {
        prop::collection::vec(any::<bool>(), nl * nr).prop_map(move |bits| bipartite(nl, nr, &bits))
    })
}

pub fn arb_graph(max: usize) -> impl Strategy<Value = Graph> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| bits[u * n + v])
                .collect();
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

pub fn arb_order(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}
