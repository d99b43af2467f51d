use super::tree::{MergeTree, TreeBuilder, TreeKind};
use super::verify::{verify_convex_width, verify_width};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, OrderedBipartiteGraph, Side, VertexSet};

/// Splits every part into its two sides and serializes simultaneous splits
/// (left half first), then orders the vertices so that every part of every
/// partition is an interval.
///
/// Splitting every part by side costs at most one extra impure partner, but the
/// intermediate partition inserted when both halves split can cost one more: a
/// width-0 sequence of `2K_2` has no convex sequence below width 2. The output
/// is checked against `d + 2`.
pub fn convexify(g: &BipartiteGraph, t: &MergeTree) -> Result<(OrderedBipartiteGraph, MergeTree)> {
    let d = verify_width(g.graph(), t)?.width;
    let sets = t.node_sets();
    let mut b = TreeBuilder::new(g.n());
    let mut roots = Vec::new();
    let mut order = Vec::with_capacity(g.n());
    for side in [Side::Left, Side::Right] {
        let mask = g.side_set(side);
        let mut found = Vec::new();
        for &r in t.roots() {
            if let Some(x) = project(t, &sets, mask, side, r, &mut b) {
                found.push((r, x));
            }
        }
        match found.len() {
            0 => {}
            1 => {
                let (r, x) = found[0];
                roots.push(x);
                order.extend(t.leaves_of(r).into_iter().filter(|&v| mask.contains(v)));
            }
            _ => return Err(Error::input("several roots meet one side")),
        }
    }
    let tree = b.finish(TreeKind::Convex, roots)?;
    let ordered = OrderedBipartiteGraph::new(g.clone(), order)?;
    let out = verify_convex_width(&ordered, &tree)?;
    if out.width > d + 2 {
        return Err(Error::certified(
            "convex-twin-width",
            format!("convex width {} exceeds {} + 2", out.width, d),
        ));
    }
    Ok((ordered, tree))
}

/// Image of node `x` intersected with one side, built bottom-up.
fn project(
    t: &MergeTree,
    sets: &[VertexSet],
    mask: &VertexSet,
    side: Side,
    x: usize,
    b: &mut TreeBuilder,
) -> Option<usize> {
    if sets[x].is_disjoint(mask) {
        return None;
    }
    match t.children(x) {
        None => Some(x),
        Some((c1, c2)) => {
            let a = project(t, sets, mask, side, c1, b);
            let c = project(t, sets, mask, side, c2, b);
            match (a, c) {
                (Some(a), Some(c)) => {
                    let key = (t.split_time(x).unwrap(), side as usize);
                    Some(b.join(a, c, key))
                }
                (Some(y), None) | (None, Some(y)) => Some(y),
                (None, None) => unreachable!(),
            }
        }
    }
}
