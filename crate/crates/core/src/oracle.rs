//! Exhaustive ground truth for small inputs.

use crate::contraction::{exact_twinwidth, EXACT_LIMIT};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const CHROMATIC_LIMIT: usize = 25;
pub const CLIQUE_LIMIT: usize = 40;
pub const BICLIQUE_LIMIT: usize = 60;

fn guard(g: &Graph, limit: usize, what: &str) -> Result<()> {
    if g.n() > limit {
        return Err(Error::Refused(format!("{what} oracle handles at most {limit} vertices, got {}", g.n())));
    }
    Ok(())
}

pub fn twinwidth(g: &Graph) -> Result<usize> {
    guard(g, EXACT_LIMIT, "twin-width")?;
    Ok(exact_twinwidth(g)?.0)
}

/// Clique number without a size guard; exponential in the worst case.
pub fn max_clique_unchecked(g: &Graph) -> usize {
    fn expand(g: &Graph, size: usize, mut cand: VertexSet, mut excl: VertexSet, best: &mut usize) {
        if cand.is_clear() && excl.is_clear() {
            *best = (*best).max(size);
            return;
        }
        if size + cand.count_ones(..) <= *best {
            return;
        }
        let pivot = cand
            .union(&excl)
            .max_by_key(|&u| cand.intersection(g.neighbors(u)).count())
            .unwrap();
        let todo: Vec<usize> = cand.difference(g.neighbors(pivot)).collect();
        for v in todo {
            let mut c = cand.clone();
            c.intersect_with(g.neighbors(v));
            let mut x = excl.clone();
            x.intersect_with(g.neighbors(v));
            expand(g, size + 1, c, x, best);
            cand.set(v, false);
            excl.insert(v);
        }
    }
    let mut best = 0;
    let mut cand = VertexSet::with_capacity(g.n());
    cand.insert_range(..);
    expand(g, 0, cand, VertexSet::with_capacity(g.n()), &mut best);
    best
}

pub fn clique(g: &Graph) -> Result<usize> {
    guard(g, CLIQUE_LIMIT, "clique")?;
    Ok(max_clique_unchecked(g))
}

pub fn chromatic(g: &Graph) -> Result<usize> {
    guard(g, CHROMATIC_LIMIT, "chromatic")?;
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    // colour vertices by decreasing degree; try k = ω, ω+1, ...
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    fn fits(g: &Graph, order: &[usize], i: usize, k: usize, used: usize, col: &mut [usize]) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        for c in 0..k.min(used + 1) {
            if g.neighbors(v).ones().all(|u| col[u] != c) {
                col[v] = c;
                if fits(g, order, i + 1, k, used.max(c + 1), col) {
                    return true;
                }
                col[v] = usize::MAX;
            }
        }
        false
    }
    let mut k = max_clique_unchecked(g).max(1);
    loop {
        let mut col = vec![usize::MAX; n];
        if fits(g, &order, 0, k, 0, &mut col) {
            return Ok(k);
        }
        k += 1;
    }
}

/// An induced path `a - b - c - d`, if any.
pub fn find_p4(g: &Graph) -> Option<[usize; 4]> {
    for (b, c) in g.edges().into_iter().flat_map(|(u, v)| [(u, v), (v, u)]) {
        for a in g.neighbors(b).ones() {
            if a == c || g.has_edge(a, c) {
                continue;
            }
            for d in g.neighbors(c).ones() {
                if d != b && d != a && !g.has_edge(d, b) && !g.has_edge(a, d) {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

pub fn p4free(g: &Graph) -> bool {
    find_p4(g).is_none()
}

/// Whether `g` contains `K_{s,s}` as a (not necessarily induced) subgraph.
pub fn has_biclique(g: &Graph, s: usize) -> Result<bool> {
    guard(g, BICLIQUE_LIMIT, "biclique")?;
    Ok(biclique_unchecked(g, s))
}

/// Backtracking over one side `A` (increasing ids) while the common
/// neighbourhood outside `A` keeps at least `s` vertices.
pub fn biclique_unchecked(g: &Graph, s: usize) -> bool {
    if s == 0 {
        return true;
    }
    fn grow(g: &Graph, s: usize, start: usize, chosen: &mut Vec<usize>, common: &VertexSet) -> bool {
        let outside = common.ones().filter(|v| !chosen.contains(v)).count();
        if outside < s {
            return false;
        }
        if chosen.len() == s {
            return true;
        }
        for v in start..g.n() {
            if g.degree(v) < s {
                continue;
            }
            let mut next = common.clone();
            next.intersect_with(g.neighbors(v));
            chosen.push(v);
            if grow(g, s, v + 1, chosen, &next) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut all = VertexSet::with_capacity(g.n());
    all.insert_range(..);
    grow(g, s, 0, &mut Vec::new(), &all)
}
