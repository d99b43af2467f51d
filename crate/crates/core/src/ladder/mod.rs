//! Ladders and quasi-ladders: threshold queries, exact indices, witnesses.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{full_set, BipartiteGraph, Graph, VertexSet};

mod quasi;

/// Largest vertex count for which exact indices are computed.
pub const EXACT_INDEX_LIMIT: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LadderKind {
    Ladder,
    QuasiLadder,
}

/// Which alternative of the quasi-ladder condition a step satisfies.
/// `Plus`: `x_i` sees every earlier `y`, `y_i` misses every earlier `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderWitness {
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
    pub kind: LadderKind,
    pub branches: Vec<Branch>,
}

impl LadderWitness {
    pub fn order(&self) -> usize {
        self.xs.len()
    }

    /// Checks the defining conditions directly against the adjacency.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let k = self.xs.len();
        if self.ys.len() != k {
            return false;
        }
        let adj = |i: usize, j: usize| g.has_edge(self.xs[i], self.ys[j]);
        match self.kind {
            LadderKind::Ladder => (0..k).all(|i| (0..k).all(|j| adj(i, j) == (i <= j))),
            LadderKind::QuasiLadder => {
                if self.branches.len() != k {
                    return false;
                }
                (0..k).all(|i| {
                    let plus = (0..i).all(|j| adj(i, j)) && (0..i).all(|j| !adj(j, i));
                    let minus = (0..i).all(|j| !adj(i, j)) && (0..i).all(|j| adj(j, i));
                    match self.branches[i] {
                        Branch::Plus => plus,
                        Branch::Minus => minus,
                    }
                })
            }
        }
    }

    pub fn is_valid(&self, g: &BipartiteGraph) -> bool {
        self.xs.iter().all(|&x| x < g.n() && g.left().contains(x))
            && self.ys.iter().all(|&y| y < g.n() && g.right().contains(y))
            && self.is_valid_in(g.graph())
    }
}

/// Depth-bounded quasi-ladder search with x's drawn from `a` and y's from `b`.
///
/// The sets may overlap: adjacency is read from the graph, and a vertex is never
/// adjacent to itself, which is exactly the double-cover semantics.
///
/// Only the first alternative is searched. Placing each `Plus` step at the top
/// and each `Minus` step at the bottom of a linear order turns any quasi-ladder
/// into one of the same order whose steps are all `Plus`.
pub struct QuasiLadderSearch {
    engine: Box<dyn quasi::Engine>,
}

impl QuasiLadderSearch {
    pub fn new(g: &Graph, a: &VertexSet, b: &VertexSet) -> Self {
        QuasiLadderSearch { engine: quasi::engine(g, a, b) }
    }

    pub fn at_least(&mut self, k: usize) -> Option<LadderWitness> {
        self.engine.at_least(k).map(|path| LadderWitness {
            xs: path.iter().map(|p| p.0).collect(),
            ys: path.iter().map(|p| p.1).collect(),
            kind: LadderKind::QuasiLadder,
            branches: vec![Branch::Plus; path.len()],
        })
    }

    /// Exact index; the failure memo is shared between successive thresholds.
    pub fn index(&mut self) -> usize {
        let mut k = 0;
        while self.at_least(k + 1).is_some() {
            k += 1;
        }
        k
    }
}

/// Threshold query on `G[A, B]` of a general graph (sets may overlap).
pub fn quasi_ladder_at_least_in(g: &Graph, a: &VertexSet, b: &VertexSet, k: usize) -> Option<LadderWitness> {
    QuasiLadderSearch::new(g, a, b).at_least(k)
}

pub fn quasi_ladder_at_least(g: &BipartiteGraph, k: usize) -> Option<LadderWitness> {
    quasi_ladder_at_least_in(g.graph(), g.left(), g.right(), k)
}

/// Exact quasi-ladder index of `G[A, B]` with no size guard.
pub fn measure_quasi_index_in(g: &Graph, a: &VertexSet, b: &VertexSet) -> usize {
    QuasiLadderSearch::new(g, a, b).index()
}

pub fn quasi_ladder_index(g: &BipartiteGraph) -> Result<usize> {
    guard(g.n())?;
    Ok(measure_quasi_index_in(g.graph(), g.left(), g.right()))
}

/// Quasi-ladder index of the double cover of `G`, searched without building it.
pub fn graph_quasi_index(g: &Graph) -> Result<usize> {
    guard(2 * g.n())?;
    Ok(measure_graph_index(g))
}

pub fn measure_graph_index(g: &Graph) -> usize {
    let all = full_set(g.n());
    measure_quasi_index_in(g, &all, &all)
}

/// Whether the double cover of `G[within]` has a quasi-ladder of order `k`.
pub fn graph_index_at_least(g: &Graph, within: &VertexSet, k: usize) -> bool {
    quasi_ladder_at_least_in(g, within, within, k).is_some()
}

fn guard(n: usize) -> Result<()> {
    if n > EXACT_INDEX_LIMIT {
        return Err(Error::Refused(format!(
            "exact index limited to {EXACT_INDEX_LIMIT} vertices (got {n}); use threshold queries"
        )));
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct LadderState {
    xcand: FixedBitSet,
    ycand: FixedBitSet,
}

struct LadderSearch<'g> {
    adj: &'g [FixedBitSet],
    failed: HashMap<LadderState, usize>,
}

impl LadderSearch<'_> {
    fn extend(&mut self, st: &LadderState, need: usize, path: &mut Vec<(usize, usize)>) -> bool {
        if need == 0 {
            return true;
        }
        if self.failed.get(st).is_some_and(|&f| f <= need) {
            return false;
        }
        let mut xs_seen = HashMap::new();
        for x in st.xcand.ones() {
            let mut ys = self.adj[x].clone();
            ys.grow(st.ycand.len());
            ys.intersect_with(&st.ycand);
            if ys.is_clear() || xs_seen.insert(ys.clone(), ()).is_some() {
                continue;
            }
            let mut ys_seen = HashMap::new();
            for y in ys.ones() {
                let mut xn = self.adj[y].clone();
                xn.grow(st.xcand.len());
                xn.intersect_with(&st.xcand);
                if ys_seen.insert(xn.clone(), ()).is_some() {
                    continue;
                }
                let mut xcand = st.xcand.clone();
                xcand.difference_with(&xn);
                let next = LadderState { xcand, ycand: ys.clone() };
                path.push((x, y));
                if self.extend(&next, need - 1, path) {
                    return true;
                }
                path.pop();
            }
        }
        let e = self.failed.entry(st.clone()).or_insert(need);
        *e = (*e).min(need);
        false
    }
}

pub fn ladder_at_least(g: &BipartiteGraph, k: usize) -> Option<LadderWitness> {
    let mut s = LadderSearch { adj: g.graph().adjacency(), failed: HashMap::new() };
    let start = LadderState { xcand: g.left().clone(), ycand: g.right().clone() };
    let mut path = Vec::new();
    s.extend(&start, k, &mut path).then(|| LadderWitness {
        xs: path.iter().map(|p| p.0).collect(),
        ys: path.iter().map(|p| p.1).collect(),
        kind: LadderKind::Ladder,
        branches: Vec::new(),
    })
}

pub fn ladder_index(g: &BipartiteGraph) -> Result<usize> {
    guard(g.n())?;
    let mut s = LadderSearch { adj: g.graph().adjacency(), failed: HashMap::new() };
    let start = LadderState { xcand: g.left().clone(), ycand: g.right().clone() };
    let mut k = 0;
    while s.extend(&start, k + 1, &mut Vec::new()) {
        k += 1;
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::double_cover;

    fn half_graph(n: usize) -> BipartiteGraph {
        let edges: Vec<_> = (0..n).flat_map(|i| (i..n).map(move |j| (i, n + j))).collect();
        BipartiteGraph::from_sides(n, n, edges).unwrap()
    }

    #[test]
    fn complete_and_edgeless_have_index_one() {
        for g in [BipartiteGraph::complete(3, 2), BipartiteGraph::from_sides(2, 3, []).unwrap()] {
            assert!(quasi_ladder_at_least(&g, 2).is_none());
            assert_eq!(quasi_ladder_index(&g).unwrap(), 1);
        }
        assert_eq!(ladder_index(&BipartiteGraph::complete(3, 3)).unwrap(), 1);
        assert_eq!(ladder_index(&BipartiteGraph::from_sides(2, 2, []).unwrap()).unwrap(), 0);
    }

    #[test]
    fn empty_side_is_zero() {
        let g = BipartiteGraph::from_sides(0, 3, []).unwrap();
        assert_eq!(quasi_ladder_index(&g).unwrap(), 0);
    }

    #[test]
    fn half_graph_witnesses() {
        let h = half_graph(3);
        let w = quasi_ladder_at_least(&h, 3).unwrap();
        assert!(w.is_valid(&h));
        assert_eq!(ladder_index(&half_graph(4)).unwrap(), 4);
        let lw = ladder_at_least(&half_graph(4), 4).unwrap();
        assert!(lw.is_valid(&half_graph(4)));
    }

    #[test]
    fn graph_index_matches_double_cover() {
        for g in [Graph::complete(1), Graph::complete(4), Graph::path(4), Graph::cycle(5)] {
            let via_cover = quasi_ladder_index(&double_cover(&g)).unwrap();
            assert_eq!(graph_quasi_index(&g).unwrap(), via_cover);
        }
        assert_eq!(graph_quasi_index(&Graph::complete(1)).unwrap(), 1);
        assert_eq!(graph_quasi_index(&Graph::new(4)).unwrap(), 1);
    }
}
