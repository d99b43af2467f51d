//! Strong and weak coloring numbers, and the greedy star coloring.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{permutation_rank, Graph, VertexSet};
use crate::par;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedGraph {
    graph: Graph,
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl OrderedGraph {
    pub fn new(graph: Graph, order: Vec<usize>) -> Result<Self> {
        let rank = permutation_rank(graph.n(), &order)?;
        Ok(OrderedGraph { graph, order, rank })
    }

    /// Vertex ids in increasing order.
    pub fn natural(graph: Graph) -> Self {
        let order = (0..graph.n()).collect();
        OrderedGraph::new(graph, order).unwrap()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    /// Largest number of earlier neighbours of any vertex.
    pub fn degeneracy(&self) -> usize {
        (0..self.n())
            .map(|v| self.graph.neighbors(v).ones().filter(|&w| self.rank[w] < self.rank[v]).count())
            .max()
            .unwrap_or(0)
    }
}

/// Vertices `w <= v` reachable from `v` by a path of length at most `r`
/// whose interior vertices are all greater than `v`.
pub fn sreach(g: &OrderedGraph, r: usize, v: usize) -> VertexSet {
    let n = g.n();
    let rv = g.rank[v];
    let mut out = FixedBitSet::with_capacity(n);
    out.insert(v);
    let mut seen = FixedBitSet::with_capacity(n);
    seen.insert(v);
    let mut queue = VecDeque::from([(v, 0usize)]);
    while let Some((u, dist)) = queue.pop_front() {
        if dist == r {
            continue;
        }
        for w in g.graph.neighbors(u).ones() {
            if seen.put(w) {
                continue;
            }
            if g.rank[w] < rv {
                out.insert(w);
            } else {
                queue.push_back((w, dist + 1));
            }
        }
    }
    out
}

/// All weak `r`-reachability sets: `w` is in the set of `v` if some path of
/// length at most `r` joins them and `w` is its least vertex.
pub fn wreach_all(g: &OrderedGraph, r: usize) -> Vec<VertexSet> {
    let n = g.n();
    // reached[w] = vertices v for which w is weakly reachable
    let reached: Vec<Vec<usize>> = par::map_range(n, |w| {
        let rw = g.rank[w];
        let mut seen = FixedBitSet::with_capacity(n);
        seen.insert(w);
        let mut hits = Vec::new();
        let mut queue = VecDeque::from([(w, 0usize)]);
        while let Some((u, dist)) = queue.pop_front() {
            if dist == r {
                continue;
            }
            for x in g.graph.neighbors(u).ones() {
                if g.rank[x] > rw && !seen.put(x) {
                    hits.push(x);
                    queue.push_back((x, dist + 1));
                }
            }
        }
        hits
    });
    let mut out: Vec<VertexSet> = (0..n)
        .map(|v| {
            let mut s = FixedBitSet::with_capacity(n);
            s.insert(v);
            s
        })
        .collect();
    for (w, hits) in reached.into_iter().enumerate() {
        for v in hits {
            out[v].insert(w);
        }
    }
    out
}

pub fn wreach(g: &OrderedGraph, r: usize, v: usize) -> VertexSet {
    wreach_all(g, r).swap_remove(v)
}

pub fn sreach_all(g: &OrderedGraph, r: usize) -> Vec<VertexSet> {
    par::map_range(g.n(), |v| sreach(g, r, v))
}

pub fn scol(g: &OrderedGraph, r: usize) -> usize {
    sreach_all(g, r).iter().map(|s| s.count_ones(..)).max().unwrap_or(0)
}

pub fn wcol(g: &OrderedGraph, r: usize) -> usize {
    wreach_all(g, r).iter().map(|s| s.count_ones(..)).max().unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarColoring {
    /// Colors are `0..palette`.
    pub colors: Vec<usize>,
    pub palette: usize,
}

impl StarColoring {
    pub fn used(&self) -> usize {
        self.colors.iter().copied().max().map_or(0, |c| c + 1)
    }
}

/// Greedy in order: each vertex takes the least color not used on the rest of
/// its weak 2-reachability set. The palette is `wcol_2`.
pub fn star_coloring(g: &OrderedGraph) -> StarColoring {
    let n = g.n();
    let wr = wreach_all(g, 2);
    let palette = wr.iter().map(|s| s.count_ones(..)).max().unwrap_or(0);
    let mut colors = vec![usize::MAX; n];
    for &v in &g.order {
        let mut taken = FixedBitSet::with_capacity(palette + 1);
        for w in wr[v].ones().filter(|&w| w != v) {
            taken.insert(colors[w]);
        }
        colors[v] = (0..).find(|&c| !taken.contains(c)).unwrap();
    }
    let out = StarColoring { colors, palette };
    assert!(
        out.used() <= palette && verify_star_coloring(g, &out.colors),
        "greedy star coloring failed its own check"
    );
    out
}

/// Every two-color class must be a disjoint union of stars centred at the
/// least vertex of each component (which also makes the coloring proper).
pub fn verify_star_coloring(g: &OrderedGraph, colors: &[usize]) -> bool {
    let n = g.n();
    if colors.len() != n {
        return false;
    }
    if g.graph.edges().any(|(u, v)| colors[u] == colors[v]) {
        return false;
    }
    let mut palette: Vec<usize> = colors.to_vec();
    palette.sort_unstable();
    palette.dedup();
    let pairs: Vec<(usize, usize)> = palette
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| palette[i + 1..].iter().map(move |&b| (a, b)))
        .collect();
    !par::any(&pairs, |&(a, b)| {
        let within: VertexSet = {
            let mut s = FixedBitSet::with_capacity(n);
            s.extend((0..n).filter(|&v| colors[v] == a || colors[v] == b));
            s
        };
        g.graph.components(&within).iter().any(|comp| !is_star_at_least(g, comp))
    })
}

fn is_star_at_least(g: &OrderedGraph, comp: &VertexSet) -> bool {
    let center = comp.ones().min_by_key(|&v| g.rank[v]).unwrap();
    comp.ones().filter(|&v| v != center).all(|v| {
        let mut nb = g.graph.neighbors(v).clone();
        nb.intersect_with(comp);
        nb.count_ones(..) == 1 && nb.contains(center)
    })
}
