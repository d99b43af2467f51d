use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexSet = FixedBitSet;

/// Builds a vertex set of capacity `n` from a list of members.
pub fn set_from(n: usize, members: impl IntoIterator<Item = usize>) -> VertexSet {
    let mut s = FixedBitSet::with_capacity(n);
    for v in members {
        s.insert(v);
    }
    s
}

pub fn full_set(n: usize) -> VertexSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

pub fn members(s: &VertexSet) -> Vec<usize> {
    s.ones().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![FixedBitSet::with_capacity(n); n] }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::input(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            g.adj[u].insert_range(..);
            g.adj[u].set(u, false);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(0, n - 1);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].set(v, false);
        self.adj[v].set(u, false);
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u].toggle(v);
        self.adj[v].toggle(u);
    }

    pub fn union_with(&mut self, other: &Graph) {
        for (a, b) in self.adj.iter_mut().zip(&other.adj) {
            a.union_with(b);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn adjacency(&self) -> &[FixedBitSet] {
        &self.adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones(..)).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::new(n);
        for u in 0..n {
            let mut row = self.adj[u].clone();
            row.toggle_range(..);
            row.set(u, false);
            g.adj[u] = row;
        }
        g
    }

    /// Induced subgraph on `vertices`; new vertex `i` is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|a| a.is_clear())
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.adj.iter().all(|a| a.count_ones(..) + 1 == n)
    }

    /// Purity of the pair `(x, y)`; the sets must be disjoint.
    pub fn purity(&self, x: &VertexSet, y: &VertexSet) -> Purity {
        let nx = x.count_ones(..);
        let ny = y.count_ones(..);
        if nx == 0 || ny == 0 {
            return Purity::Anticomplete;
        }
        let (small, big, big_n) = if nx <= ny { (x, y, ny) } else { (y, x, nx) };
        let mut some_full = false;
        let mut some_empty = false;
        for v in small.ones() {
            let c = self.adj[v].intersection_count(big);
            if c == 0 {
                some_empty = true;
            } else if c == big_n {
                some_full = true;
            } else {
                return Purity::Impure;
            }
            if some_full && some_empty {
                return Purity::Impure;
            }
        }
        if some_full {
            Purity::Complete
        } else {
            Purity::Anticomplete
        }
    }

    /// Connected components of the subgraph induced by `within`.
    pub fn components(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut left = within.clone();
        let mut out = Vec::new();
        while let Some(s) = left.ones().next() {
            let mut comp = FixedBitSet::with_capacity(self.n());
            let mut stack = vec![s];
            comp.insert(s);
            left.set(s, false);
            while let Some(u) = stack.pop() {
                let mut next = self.adj[u].clone();
                next.intersect_with(&left);
                for w in next.ones() {
                    left.set(w, false);
                    comp.insert(w);
                    stack.push(w);
                }
            }
            out.push(comp);
        }
        out
    }
}

/// Outcome at the bottom of a recursion: the graph is complete or edgeless.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Complete,
    Edgeless,
}

impl Verdict {
    /// `None` when the graph is neither; graphs on at most one vertex are edgeless.
    pub fn of(g: &Graph) -> Option<Verdict> {
        if g.is_edgeless() {
            Some(Verdict::Edgeless)
        } else if g.is_complete() {
            Some(Verdict::Complete)
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Purity {
    Complete,
    Anticomplete,
    Impure,
}

impl Purity {
    pub fn is_pure(self) -> bool {
        self != Purity::Impure
    }

    pub fn sign(self) -> Option<Sign> {
        match self {
            Purity::Complete => Some(Sign::Plus),
            Purity::Anticomplete => Some(Sign::Minus),
            Purity::Impure => None,
        }
    }
}

/// Purity type of a pure pair: `Plus` for complete, `Minus` for anticomplete.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    graph: Graph,
    left: VertexSet,
    right: VertexSet,
}

impl BipartiteGraph {
    pub fn new(graph: Graph, left: VertexSet) -> Result<Self> {
        let n = graph.n();
        if left.ones().any(|v| v >= n) {
            return Err(Error::input("left side mentions vertices outside the graph"));
        }
        let left = set_from(n, left.ones());
        let mut right = left.clone();
        right.toggle_range(..);
        for (u, v) in graph.edges() {
            if left.contains(u) == left.contains(v) {
                return Err(Error::input(format!("edge ({u},{v}) does not cross the sides")));
            }
        }
        Ok(BipartiteGraph { graph, left, right })
    }

    /// Left side is `0..n_left`, right side `n_left..n_left+n_right`.
    pub fn from_sides(
        n_left: usize,
        n_right: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let n = n_left + n_right;
        let g = Graph::from_edges(n, edges)?;
        BipartiteGraph::new(g, set_from(n, 0..n_left))
    }

    pub fn complete(n_left: usize, n_right: usize) -> Self {
        let edges = (0..n_left).flat_map(|u| (0..n_right).map(move |j| (u, n_left + j)));
        BipartiteGraph::from_sides(n_left, n_right, edges.collect::<Vec<_>>()).unwrap()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn left(&self) -> &VertexSet {
        &self.left
    }

    pub fn right(&self) -> &VertexSet {
        &self.right
    }

    pub fn side_set(&self, side: Side) -> &VertexSet {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn side(&self, v: usize) -> Side {
        if self.left.contains(v) {
            Side::Left
        } else {
            Side::Right
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.graph.has_edge(u, v)
    }
}

/// Purity of `(x, y)` in `g`. Overlapping sets are rejected.
pub fn purity(g: &BipartiteGraph, x: &VertexSet, y: &VertexSet) -> Result<Purity> {
    if !x.is_disjoint(y) {
        return Err(Error::input("purity query on overlapping sets"));
    }
    Ok(g.graph.purity(x, y))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedBipartiteGraph {
    bip: BipartiteGraph,
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl OrderedBipartiteGraph {
    /// `order` lists the vertices from least to greatest.
    pub fn new(bip: BipartiteGraph, order: Vec<usize>) -> Result<Self> {
        let n = bip.n();
        let rank = permutation_rank(n, &order)?;
        let n_left = bip.left().count_ones(..);
        if order.iter().take(n_left).any(|&v| !bip.left().contains(v)) {
            return Err(Error::input("order places a right vertex before a left vertex"));
        }
        Ok(OrderedBipartiteGraph { bip, order, rank })
    }

    /// Left vertices by id, then right vertices by id.
    pub fn natural(bip: BipartiteGraph) -> Self {
        let mut order: Vec<usize> = bip.left().ones().collect();
        order.extend(bip.right().ones());
        OrderedBipartiteGraph::new(bip, order).expect("natural order is compatible")
    }

    pub fn bip(&self) -> &BipartiteGraph {
        &self.bip
    }

    pub fn graph(&self) -> &Graph {
        self.bip.graph()
    }

    pub fn n(&self) -> usize {
        self.bip.n()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn is_convex(&self, s: &VertexSet) -> bool {
        let mut lo = usize::MAX;
        let mut hi = 0;
        let mut count = 0;
        for v in s.ones() {
            let r = self.rank[v];
            lo = lo.min(r);
            hi = hi.max(r);
            count += 1;
        }
        count == 0 || hi - lo + 1 == count
    }
}

pub(crate) fn permutation_rank(n: usize, order: &[usize]) -> Result<Vec<usize>> {
    if order.len() != n {
        return Err(Error::input(format!("order has {} entries, expected {n}", order.len())));
    }
    let mut rank = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || rank[v] != usize::MAX {
            return Err(Error::input("order is not a permutation of the vertices"));
        }
        rank[v] = i;
    }
    Ok(rank)
}

/// One flip: complement adjacency on `left × right`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flip {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Flip {
    pub fn new(mut left: Vec<usize>, mut right: Vec<usize>) -> Self {
        left.sort_unstable();
        left.dedup();
        right.sort_unstable();
        right.dedup();
        Flip { left, right }
    }

    pub fn from_sets(left: &VertexSet, right: &VertexSet) -> Self {
        Flip { left: left.ones().collect(), right: right.ones().collect() }
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty() || self.right.is_empty()
    }

    pub fn restrict(&self, keep: &VertexSet) -> Flip {
        Flip {
            left: self.left.iter().copied().filter(|&v| keep.contains(v)).collect(),
            right: self.right.iter().copied().filter(|&v| keep.contains(v)).collect(),
        }
    }
}

fn check_flips(g: &BipartiteGraph, flips: &[Flip]) -> Result<()> {
    for (i, f) in flips.iter().enumerate() {
        for &u in &f.left {
            if u >= g.n() || !g.left().contains(u) {
                return Err(Error::input(format!("flip {i}: vertex {u} is not on the left side")));
            }
        }
        for &v in &f.right {
            if v >= g.n() || !g.right().contains(v) {
                return Err(Error::input(format!("flip {i}: vertex {v} is not on the right side")));
            }
        }
    }
    Ok(())
}

/// XORs every flip into the adjacency rows of `g`, in place.
pub(crate) fn toggle_flips(g: &mut Graph, flips: &[Flip]) {
    let n = g.n();
    for f in flips {
        let l = set_from(n, f.left.iter().copied());
        let r = set_from(n, f.right.iter().copied());
        for &u in &f.left {
            g.adj[u].symmetric_difference_with(&r);
        }
        for &v in &f.right {
            g.adj[v].symmetric_difference_with(&l);
        }
    }
}

pub fn apply_flips(g: &BipartiteGraph, flips: &[Flip]) -> Result<BipartiteGraph> {
    check_flips(g, flips)?;
    let mut out = g.clone();
    toggle_flips(&mut out.graph, flips);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    parts: Vec<VertexSet>,
    part_of: Vec<usize>,
}

impl Division {
    pub fn new(n: usize, parts: Vec<VertexSet>) -> Result<Self> {
        let mut part_of = vec![usize::MAX; n];
        for (i, p) in parts.iter().enumerate() {
            if p.is_clear() {
                return Err(Error::input(format!("part {i} is empty")));
            }
            for v in p.ones() {
                if v >= n {
                    return Err(Error::input(format!("part {i} has out-of-range vertex {v}")));
                }
                if part_of[v] != usize::MAX {
                    return Err(Error::input(format!("vertex {v} lies in two parts")));
                }
                part_of[v] = i;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(Error::input(format!("vertex {v} is in no part")));
        }
        let parts = parts
            .into_iter()
            .map(|mut p| {
                p.grow(n);
                p
            })
            .collect();
        Ok(Division { parts, part_of })
    }

    pub fn singletons(n: usize) -> Self {
        Division::new(n, (0..n).map(|v| set_from(n, [v])).collect()).unwrap()
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn check_sides(&self, g: &BipartiteGraph) -> Result<()> {
        for (i, p) in self.parts.iter().enumerate() {
            if !p.is_subset(g.left()) && !p.is_subset(g.right()) {
                return Err(Error::input(format!("part {i} meets both sides")));
            }
        }
        Ok(())
    }

    pub fn check_convex(&self, g: &OrderedBipartiteGraph) -> Result<()> {
        self.check_sides(g.bip())?;
        for (i, p) in self.parts.iter().enumerate() {
            if !g.is_convex(p) {
                return Err(Error::input(format!("part {i} is not convex")));
            }
        }
        Ok(())
    }
}

/// Quotient `G/F`: part `i` becomes vertex `i`.
pub fn quotient(g: &BipartiteGraph, f: &Division) -> Result<BipartiteGraph> {
    if f.part_of.len() != g.n() {
        return Err(Error::input("division does not partition the vertex set"));
    }
    f.check_sides(g)?;
    let m = f.len();
    let mut q = Graph::new(m);
    for (u, v) in g.graph.edges() {
        let (a, b) = (f.part_of[u], f.part_of[v]);
        q.adj[a].insert(b);
        q.adj[b].insert(a);
    }
    let left = set_from(m, (0..m).filter(|&i| f.parts[i].is_subset(g.left()) && !f.parts[i].is_clear()));
    BipartiteGraph::new(q, left)
}

/// `G[A, B]` relabelled densely in increasing original id; returns the map new → old.
pub fn induced_bipartite(
    g: &BipartiteGraph,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<(BipartiteGraph, Vec<usize>)> {
    if !a.is_subset(g.left()) || !b.is_subset(g.right()) {
        return Err(Error::input("induced_bipartite: sets cross sides"));
    }
    let mut keep = a.clone();
    keep.union_with(b);
    let map: Vec<usize> = keep.ones().collect();
    let sub = g.graph.induced(&map);
    let left = set_from(map.len(), (0..map.len()).filter(|&i| a.contains(map[i])));
    Ok((BipartiteGraph::new(sub, left)?, map))
}

/// Copy one of `u` is `u`, copy two is `n + u`.
pub fn double_cover(g: &Graph) -> BipartiteGraph {
    let n = g.n();
    let mut d = Graph::new(2 * n);
    for (u, v) in g.edges() {
        d.add_edge(u, n + v);
        d.add_edge(v, n + u);
    }
    BipartiteGraph::new(d, set_from(2 * n, 0..n)).expect("double cover is bipartite")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half2() -> BipartiteGraph {
        // x1=0, x2=1, y1=2, y2=3
        BipartiteGraph::from_sides(2, 2, [(0, 2), (0, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn purity_basic() {
        let k22 = BipartiteGraph::complete(2, 2);
        assert_eq!(purity(&k22, k22.left(), k22.right()).unwrap(), Purity::Complete);
        let e = BipartiteGraph::from_sides(2, 2, []).unwrap();
        assert_eq!(purity(&e, e.left(), e.right()).unwrap(), Purity::Anticomplete);
        let h = half2();
        let y1 = set_from(4, [2]);
        assert_eq!(purity(&h, h.left(), &y1).unwrap(), Purity::Impure);
        assert!(purity(&h, h.left(), h.left()).is_err());
        assert_eq!(purity(&h, &set_from(4, []), h.right()).unwrap(), Purity::Anticomplete);
    }

    #[test]
    fn flips_behave() {
        let k22 = BipartiteGraph::complete(2, 2);
        let f = Flip::from_sets(k22.left(), k22.right());
        assert!(apply_flips(&k22, &[f.clone()]).unwrap().graph().is_edgeless());
        assert_eq!(apply_flips(&k22, &[]).unwrap(), k22);
        assert_eq!(apply_flips(&k22, &[f.clone(), f]).unwrap(), k22);
        assert!(apply_flips(&k22, &[Flip::new(vec![2], vec![3])]).is_err());
    }

    #[test]
    fn quotient_of_half_graph() {
        let h = half2();
        let f = Division::new(4, vec![set_from(4, [0, 1]), set_from(4, [2, 3])]).unwrap();
        let q = quotient(&h, &f).unwrap();
        assert_eq!(q.n(), 2);
        assert_eq!(q.graph().edge_count(), 1);
        let s = quotient(&h, &Division::singletons(4)).unwrap();
        assert_eq!(s, h);
        assert!(Division::new(4, vec![set_from(4, [0, 1])]).is_err());
    }

    #[test]
    fn induced_half_graph_row() {
        // half-graph of order 3: x_i = i-1, y_j = 3 + j - 1, x_i ~ y_j iff i <= j
        let mut edges = vec![];
        for i in 0..3 {
            for j in i..3 {
                edges.push((i, 3 + j));
            }
        }
        let h = BipartiteGraph::from_sides(3, 3, edges).unwrap();
        let (sub, map) = induced_bipartite(&h, &set_from(6, [2]), &set_from(6, [3, 4])).unwrap();
        assert_eq!(map, vec![2, 3, 4]);
        assert!(sub.graph().is_edgeless());
        let k33 = BipartiteGraph::complete(3, 3);
        let (s2, _) = induced_bipartite(&k33, &set_from(6, []), k33.right()).unwrap();
        assert_eq!(s2.left().count_ones(..), 0);
    }

    #[test]
    fn double_cover_shapes() {
        let k2 = Graph::complete(2);
        let d = double_cover(&k2);
        assert_eq!(d.graph().edge_count(), 2);
        assert!(d.has_edge(0, 3) && d.has_edge(1, 2));
        let c6 = double_cover(&Graph::complete(3));
        assert_eq!(c6.graph().edge_count(), 6);
        assert!((0..6).all(|v| c6.graph().degree(v) == 2));
        assert_eq!(c6.graph().components(&full_set(6)).len(), 1);
    }
}
