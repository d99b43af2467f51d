use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::oracle::find_p4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoNode {
    Leaf(usize),
    Union(Vec<usize>),
    Join(Vec<usize>),
}

/// Cotree over a vertex subset of some graph; `nodes[root]` is the root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cotree {
    pub nodes: Vec<CoNode>,
    pub root: usize,
}

impl Cotree {
    pub fn leaves(&self, x: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            match &self.nodes[y] {
                CoNode::Leaf(v) => out.push(*v),
                CoNode::Union(c) | CoNode::Join(c) => stack.extend(c),
            }
        }
        out
    }

    /// Checks that `u ~ v` in `g` exactly when their least common ancestor is a join,
    /// and that union and join labels alternate.
    pub fn realizes(&self, g: &Graph) -> bool {
        self.nodes.iter().all(|node| {
            let (kids, join) = match node {
                CoNode::Leaf(_) => return true,
                CoNode::Union(c) => (c, false),
                CoNode::Join(c) => (c, true),
            };
            if kids.len() == 1 {
                return false;
            }
            let alternates = kids.iter().all(|&c| match self.nodes[c] {
                CoNode::Leaf(_) => true,
                CoNode::Union(_) => join,
                CoNode::Join(_) => !join,
            });
            let sets: Vec<Vec<usize>> = kids.iter().map(|&c| self.leaves(c)).collect();
            alternates
                && sets.iter().enumerate().all(|(i, a)| {
                    sets[i + 1..]
                        .iter()
                        .all(|b| a.iter().all(|&u| b.iter().all(|&v| g.has_edge(u, v) == join)))
                })
        })
    }

    /// Proper colouring with `ω` colours: unions share a palette, joins stack palettes.
    pub fn coloring(&self, n: usize) -> (Vec<usize>, usize) {
        let mut colors = vec![usize::MAX; n];
        let count = self.color_from(self.root, 0, &mut colors);
        (colors, count)
    }

    fn color_from(&self, x: usize, base: usize, colors: &mut [usize]) -> usize {
        match &self.nodes[x] {
            CoNode::Leaf(v) => {
                colors[*v] = base;
                1
            }
            CoNode::Union(c) => c.iter().map(|&y| self.color_from(y, base, colors)).max().unwrap_or(0),
            CoNode::Join(c) => {
                let mut used = 0;
                for &y in c {
                    used += self.color_from(y, base + used, colors);
                }
                used
            }
        }
    }
}

/// Cotree of `G[within]`, or an induced `P_4` (global ids) showing there is none.
pub fn cotree(g: &Graph, within: &VertexSet) -> Result<Cotree, [usize; 4]> {
    let mut nodes = Vec::new();
    if within.is_clear() {
        return Ok(Cotree { nodes: vec![CoNode::Union(vec![])], root: 0 });
    }
    let root = build(g, within, &mut nodes)?;
    Ok(Cotree { nodes, root })
}

fn build(g: &Graph, set: &VertexSet, nodes: &mut Vec<CoNode>) -> Result<usize, [usize; 4]> {
    let members: Vec<usize> = set.ones().collect();
    if members.len() == 1 {
        nodes.push(CoNode::Leaf(members[0]));
        return Ok(nodes.len() - 1);
    }
    let comps = g.components(set);
    let node = if comps.len() > 1 {
        let kids = comps.iter().map(|c| build(g, c, nodes)).collect::<Result<_, _>>()?;
        CoNode::Union(kids)
    } else {
        let co = co_components(g, set);
        if co.len() == 1 {
            let sub = g.induced(&members);
            let p = find_p4(&sub).expect("connected and co-connected graph contains an induced P4");
            return Err(p.map(|i| members[i]));
        }
        let kids = co.iter().map(|c| build(g, c, nodes)).collect::<Result<_, _>>()?;
        CoNode::Join(kids)
    };
    nodes.push(node);
    Ok(nodes.len() - 1)
}

fn co_components(g: &Graph, set: &VertexSet) -> Vec<VertexSet> {
    let mut left = set.clone();
    let mut out = Vec::new();
    while let Some(s) = left.ones().next() {
        let mut comp = VertexSet::with_capacity(g.n());
        comp.insert(s);
        left.set(s, false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let next: Vec<usize> = left.difference(g.neighbors(u)).collect();
            for w in next {
                left.set(w, false);
                comp.insert(w);
                stack.push(w);
            }
        }
        out.push(comp);
    }
    out
}
