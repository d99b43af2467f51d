use serde::{Deserialize, Serialize};

use super::tree::{MergeTree, TreeKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, OrderedBipartiteGraph, Purity, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthReport {
    pub width: usize,
    /// `per_step[t - 1]` is the largest impure-partner count within `P_t`.
    pub per_step: Vec<usize>,
}

pub fn verify_width(g: &Graph, t: &MergeTree) -> Result<WidthReport> {
    check_leaves(g.n(), t)?;
    let sets = t.node_sets();
    Ok(replay(g, t, &sets, |_, _| true))
}

/// Width of a convex sequence: only opposite-side pairs count. Also checks
/// that `P_1 = {L, R}` and that every part is convex and on one side.
pub fn verify_convex_width(g: &OrderedBipartiteGraph, t: &MergeTree) -> Result<WidthReport> {
    check_leaves(g.n(), t)?;
    if t.kind() != TreeKind::Convex {
        return Err(Error::structural(None, "expected a convex sequence"));
    }
    let sets = t.node_sets();
    let bip = g.bip();
    let mut root_sides = Vec::new();
    for &r in t.roots() {
        let s = &sets[r];
        if s == bip.left() {
            root_sides.push(0);
        } else if s == bip.right() {
            root_sides.push(1);
        } else {
            return Err(Error::structural(Some(1), "the first partition is not {L, R}"));
        }
    }
    root_sides.dedup();
    if root_sides.len() != t.roots().len() {
        return Err(Error::structural(Some(1), "two roots on one side"));
    }
    for x in 0..t.node_count() {
        let s = &sets[x];
        let step = Some(t.birth(x));
        if !s.is_subset(bip.left()) && !s.is_subset(bip.right()) {
            return Err(Error::structural(step, format!("part of node {x} meets both sides")));
        }
        if !g.is_convex(s) {
            return Err(Error::structural(step, format!("part of node {x} is not convex")));
        }
    }
    let left = bip.left();
    Ok(replay(g.graph(), t, &sets, |a, b| a.is_subset(left) != b.is_subset(left)))
}

fn check_leaves(n: usize, t: &MergeTree) -> Result<()> {
    if t.n() != n {
        return Err(Error::structural(
            None,
            format!("sequence has {} leaves but the graph has {n} vertices", t.n()),
        ));
    }
    Ok(())
}

/// Incremental replay. When `X` splits, a pair (child, Z) can only be impure
/// if (X, Z) was, so only X's red partners and the sibling are re-examined.
fn replay<F>(g: &Graph, t: &MergeTree, sets: &[VertexSet], relevant: F) -> WidthReport
where
    F: Fn(&VertexSet, &VertexSet) -> bool,
{
    let nodes = t.node_count();
    let mut red: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    let mut hist = vec![0usize; nodes + 1];
    let mut top = 0usize;
    let mut per_step = Vec::with_capacity(t.num_partitions());
    if t.n() == 0 {
        return WidthReport { width: 0, per_step };
    }
    let impure = |a: usize, b: usize| {
        relevant(&sets[a], &sets[b]) && g.purity(&sets[a], &sets[b]) == Purity::Impure
    };

    let roots = t.roots();
    for (i, &a) in roots.iter().enumerate() {
        for &b in &roots[i + 1..] {
            if impure(a, b) {
                red[a].push(b);
                red[b].push(a);
            }
        }
    }
    for &r in roots {
        hist[red[r].len()] += 1;
        top = top.max(red[r].len());
    }
    per_step.push(top);

    for step in 1..=t.num_splits() {
        let x = t.node_at_time(step);
        let (c1, c2) = t.children(x).unwrap();
        let partners = std::mem::take(&mut red[x]);
        hist[partners.len()] -= 1;
        for &z in &partners {
            hist[red[z].len()] -= 1;
            red[z].retain(|&w| w != x);
        }
        for &z in &partners {
            for c in [c1, c2] {
                if impure(c, z) {
                    red[c].push(z);
                    red[z].push(c);
                }
            }
        }
        if impure(c1, c2) {
            red[c1].push(c2);
            red[c2].push(c1);
        }
        for &z in partners.iter().chain([c1, c2].iter()) {
            hist[red[z].len()] += 1;
            top = top.max(red[z].len());
        }
        while top > 0 && hist[top] == 0 {
            top -= 1;
        }
        per_step.push(top);
    }
    let width = per_step.iter().copied().max().unwrap_or(0);
    WidthReport { width, per_step }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::tree::TreeBuilder;

    #[test]
    fn k2_single_merge() {
        let g = Graph::complete(2);
        let t = MergeTree::from_contractions(2, TreeKind::General, &[(0, 1)]).unwrap();
        assert_eq!(verify_width(&g, &t).unwrap().width, 0);
    }

    #[test]
    fn p3_twins_first() {
        let g = Graph::path(3);
        let mut b = TreeBuilder::new(3);
        let ac = b.join(0, 2, (2, 0));
        let root = b.join(ac, 1, (1, 0));
        let t = b.finish(TreeKind::General, vec![root]).unwrap();
        let r = verify_width(&g, &t).unwrap();
        assert_eq!(r.width, 0);
        assert_eq!(r.per_step, vec![0, 0, 0]);
    }

    #[test]
    fn leaf_mismatch_is_structural() {
        let t = MergeTree::from_contractions(2, TreeKind::General, &[(0, 1)]).unwrap();
        assert!(matches!(verify_width(&Graph::path(3), &t), Err(Error::Structural { .. })));
    }
}
