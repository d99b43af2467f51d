use crate::contraction::{heuristic_sequence, verify_width, MergeTree, TreeBuilder, TreeKind, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::graph::{set_from, BipartiteGraph, Graph};

/// Id of the copy of `v` on `layer` in the gadget.
pub fn gadget_id(v: usize, layer: usize) -> usize {
    4 * v + layer
}

/// Replaces every vertex by a path `(v,0) (v,1) (v,2) (v,3)` and every edge `vw`
/// by the edges `(v,0)(w,3)` and `(w,0)(v,3)`. Layers 0 and 2 form the left side.
pub fn encode_gadget(g: &Graph) -> BipartiteGraph {
    let n = g.n();
    let mut b = Graph::new(4 * n);
    for v in 0..n {
        for layer in 0..3 {
            b.add_edge(gadget_id(v, layer), gadget_id(v, layer + 1));
        }
    }
    for (v, w) in g.edges() {
        b.add_edge(gadget_id(v, 0), gadget_id(w, 3));
        b.add_edge(gadget_id(w, 0), gadget_id(v, 3));
    }
    let left = set_from(4 * n, (0..4 * n).filter(|x| x % 4 == 0 || x % 4 == 2));
    BipartiteGraph::new(b, left).expect("gadget edges cross the sides")
}

pub fn decode_gadget(b: &BipartiteGraph) -> Result<Graph> {
    let bad = |what: String| Err(Error::structural(None, format!("not a gadget: {what}")));
    if b.n() % 4 != 0 {
        return bad(format!("{} vertices is not a multiple of 4", b.n()));
    }
    let n = b.n() / 4;
    for x in 0..b.n() {
        if b.left().contains(x) != (x % 4 == 0 || x % 4 == 2) {
            return bad(format!("vertex {x} is on the wrong side"));
        }
    }
    let g = b.graph();
    for v in 0..n {
        for layer in 0..3 {
            if !g.has_edge(gadget_id(v, layer), gadget_id(v, layer + 1)) {
                return bad(format!("path of vertex {v} is broken at layer {layer}"));
            }
        }
        for layer in [1, 2] {
            if g.degree(gadget_id(v, layer)) != 2 {
                return bad(format!("middle vertex ({v},{layer}) has degree {}", g.degree(gadget_id(v, layer))));
            }
        }
    }
    let mut out = Graph::new(n);
    for (x, y) in g.edges() {
        let (a, c) = if x % 4 == 0 { (x, y) } else { (y, x) };
        if a % 4 == 1 || a % 4 == 2 || (a / 4 == c / 4) {
            continue;
        }
        if a % 4 != 0 || c % 4 != 3 {
            return bad(format!("edge {x}-{y} joins unexpected layers"));
        }
        let (v, w) = (a / 4, c / 4);
        if !g.has_edge(gadget_id(w, 0), gadget_id(v, 3)) {
            return bad(format!("edge ({v},0)({w},3) has no mirror"));
        }
        out.add_edge(v, w);
    }
    Ok(out)
}

/// Lifts a one-root tree of `G` to the gadget: the first three splits separate
/// the layers, then every split of `T` is replayed on each layer in turn.
pub fn gadget_tree(t: &MergeTree) -> Result<MergeTree> {
    let t = if t.roots().len() > 1 { t.with_common_root()? } else { t.clone() };
    let n = t.n();
    let mut b = TreeBuilder::new(4 * n);
    let mut image: Vec<[usize; 4]> = (0..n).map(|v| [0, 1, 2, 3].map(|l| gadget_id(v, l))).collect();
    image.resize(t.node_count(), [0; 4]);
    for time in (1..n).rev() {
        let x = t.node_at_time(time);
        let (a, c) = t.children(x).unwrap();
        for layer in 0..4 {
            let key = 3 + 4 * (time - 1) + layer + 1;
            image[x][layer] = b.join(image[a][layer], image[c][layer], (key, 0));
        }
    }
    let r = image[t.roots()[0]];
    let x23 = b.join(r[2], r[3], (3, 0));
    let x123 = b.join(r[1], x23, (2, 0));
    let root = b.join(r[0], x123, (1, 0));
    b.finish(TreeKind::General, vec![root])
}

/// The lifted tree, or a heuristic one when the lift is wider than `d + 4`.
/// Adjacent twins already force width 4 on the lift of a width-0 tree.
pub fn gadget_sequence(g: &Graph, t: &MergeTree, gadget: &BipartiteGraph) -> Result<MergeTree> {
    let d = verify_width(g, t)?.width;
    let lifted = gadget_tree(t)?;
    let w = verify_width(gadget.graph(), &lifted)?.width;
    if w <= d + 4 {
        return Ok(lifted);
    }
    let h = heuristic_sequence(gadget.graph(), DEFAULT_BUDGET);
    let hw = verify_width(gadget.graph(), &h)?.width;
    Ok(if hw < w { h } else { lifted })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_gadgets() {
        let k2 = Graph::complete(2);
        let b = encode_gadget(&k2);
        assert_eq!((b.n(), b.graph().edge_count()), (8, 8));
        assert_eq!(decode_gadget(&b).unwrap(), k2);

        let k3 = Graph::complete(3);
        let b = encode_gadget(&k3);
        assert_eq!((b.n(), b.graph().edge_count()), (12, 15));
        assert_eq!(decode_gadget(&b).unwrap(), k3);

        let e = Graph::new(4);
        assert_eq!(encode_gadget(&e).graph().components(&crate::graph::full_set(16)).len(), 4);
    }

    #[test]
    fn lifted_tree_replays() {
        let g = Graph::path(5);
        let t = heuristic_sequence(&g, DEFAULT_BUDGET);
        let b = encode_gadget(&g);
        let lifted = gadget_tree(&t).unwrap();
        assert_eq!(lifted.n(), 20);
        assert!(verify_width(b.graph(), &lifted).is_ok());
    }
}
