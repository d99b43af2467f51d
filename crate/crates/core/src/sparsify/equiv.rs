use serde::{Deserialize, Serialize};

use crate::contraction::MergeTree;
use crate::decompose::{decompose, Constants};
use crate::error::{Error, Result};
use crate::graph::{
    apply_flips, induced_bipartite, set_from, toggle_flips, BipartiteGraph, Flip, Graph,
    OrderedBipartiteGraph, Purity, Verdict, VertexSet,
};
use crate::ladder::quasi_ladder_at_least;
use crate::par;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivClass {
    pub vertices: Vec<usize>,
    pub child: Option<EquivNode>,
}

/// The relation `≈_i` of one cover, as a partition of the node's domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub key: (usize, usize, usize),
    pub classes: Vec<EquivClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EquivNode {
    Base { verdict: Verdict },
    Level { flips: Vec<Flip>, relations: Vec<Relation> },
}

impl EquivNode {
    pub fn depth(&self) -> usize {
        match self {
            EquivNode::Base { .. } => 1,
            EquivNode::Level { relations, .. } => {
                1 + relations
                    .iter()
                    .flat_map(|r| &r.classes)
                    .filter_map(|c| c.child.as_ref().map(EquivNode::depth))
                    .max()
                    .unwrap_or(0)
            }
        }
    }

    /// Number of relation slots in the flat view: each relation takes one slot
    /// and the children of its classes share the slots after it.
    pub fn slots(&self) -> usize {
        match self {
            EquivNode::Base { .. } => 0,
            EquivNode::Level { relations, .. } => relations
                .iter()
                .map(|r| 1 + r.classes.iter().filter_map(|c| c.child.as_ref().map(EquivNode::slots)).max().unwrap_or(0))
                .sum(),
        }
    }
}

/// Annotated equivalence structure over the domain `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivStructure {
    pub n: usize,
    pub left: Vec<usize>,
    pub order: Vec<usize>,
    pub k: usize,
    pub d: usize,
    pub root: EquivNode,
}

/// `t_1 = 0`, `t_{j+1} = ℓ (t_j + 1)`, saturating.
pub fn theoretical_relations(k: usize, d: usize) -> u128 {
    let ell = Constants::new(d, k).ell;
    (1..k.max(1)).fold(0u128, |t, _| ell.saturating_mul(t.saturating_add(1)))
}

pub fn encode_equiv(g: &OrderedBipartiteGraph, t: &MergeTree, k: usize, d: usize) -> Result<EquivStructure> {
    let ids: Vec<usize> = (0..g.n()).collect();
    let root = encode_node(g, t, k, d, &ids)?;
    Ok(EquivStructure {
        n: g.n(),
        left: g.bip().left().ones().collect(),
        order: g.order().to_vec(),
        k,
        d,
        root,
    })
}

fn encode_node(g: &OrderedBipartiteGraph, t: &MergeTree, k: usize, d: usize, ids: &[usize]) -> Result<EquivNode> {
    let bip = g.bip();
    if bip.left().is_clear() || bip.right().is_clear() {
        return Ok(EquivNode::Base { verdict: Verdict::Edgeless });
    }
    if quasi_ladder_at_least(bip, 2).is_none() {
        let verdict = match bip.graph().purity(bip.left(), bip.right()) {
            Purity::Complete => Verdict::Complete,
            Purity::Anticomplete => Verdict::Edgeless,
            Purity::Impure => {
                return Err(Error::certified("index-one", "graph of index 1 is neither complete nor edgeless"));
            }
        };
        return Ok(EquivNode::Base { verdict });
    }
    if k < 2 {
        return Err(Error::certified("recursion-depth", format!("index still at least 2 on {} vertices with k = {k}", g.n())));
    }
    let dec = decompose(g, t, k, d)?;
    let flipped = apply_flips(bip, &dec.flips)?;
    let n = g.n();
    let parts: Vec<&Vec<usize>> = dec.parts.iter().map(|r| &r.part).collect();

    // per relation: classes as local vertex lists, whether each is a star, and a label per vertex
    let mut relations = Vec::new();
    let mut labels: Vec<Vec<usize>> = Vec::new();
    for cover in &dec.covers {
        let mut covered = vec![false; parts.len()];
        let mut classes: Vec<(Vec<usize>, bool)> = Vec::new();
        for star in &cover.stars {
            let mut verts = parts[star.center].clone();
            covered[star.center] = true;
            for &l in &star.leaves {
                verts.extend(parts[l]);
                covered[l] = true;
            }
            verts.sort_unstable();
            classes.push((verts, !star.leaves.is_empty()));
        }
        classes.extend((0..parts.len()).filter(|&i| !covered[i]).map(|i| (parts[i].clone(), false)));
        let mut label = vec![usize::MAX; n];
        for (c, (verts, _)) in classes.iter().enumerate() {
            for &v in verts {
                label[v] = c;
            }
        }
        labels.push(label);
        relations.push((cover.key, classes));
    }
    for (u, v) in flipped.graph().edges() {
        if !labels.iter().any(|l| l[u] == l[v]) {
            return Err(Error::certified("edge-cover", format!("edge {}-{} of the flipped graph lies in no class", ids[u], ids[v])));
        }
    }

    let jobs: Vec<(usize, usize)> = relations
        .iter()
        .enumerate()
        .flat_map(|(r, (_, classes))| classes.iter().enumerate().filter(|(_, c)| c.1).map(move |(c, _)| (r, c)))
        .collect();
    let children = par::try_map(&jobs, |&(r, c)| {
        let verts = &relations[r].1[c].0;
        encode_class(g, t, k, d, ids, verts)
    })?;
    let mut children = children.into_iter();
    let relations = relations
        .into_iter()
        .map(|(key, classes)| {
            let mut classes: Vec<EquivClass> = classes
                .into_iter()
                .map(|(verts, star)| EquivClass {
                    vertices: verts.iter().map(|&v| ids[v]).collect(),
                    child: if star { Some(children.next().unwrap()) } else { None },
                })
                .collect();
            classes.sort_by_key(|c| c.vertices[0]);
            Relation { key, classes }
        })
        .collect();
    let flips = dec
        .flips
        .iter()
        .map(|f| Flip::new(f.left.iter().map(|&v| ids[v]).collect(), f.right.iter().map(|&v| ids[v]).collect()))
        .collect();
    Ok(EquivNode::Level { flips, relations })
}

fn encode_class(
    g: &OrderedBipartiteGraph,
    t: &MergeTree,
    k: usize,
    d: usize,
    ids: &[usize],
    verts: &[usize],
) -> Result<EquivNode> {
    let bip = g.bip();
    let keep = set_from(g.n(), verts.iter().copied());
    let mut a = keep.clone();
    a.intersect_with(bip.left());
    let mut b = keep.clone();
    b.intersect_with(bip.right());
    let (sub, map) = induced_bipartite(bip, &a, &b)?;
    let order: Vec<usize> =
        g.order().iter().filter(|&&v| keep.contains(v)).map(|v| map.binary_search(v).unwrap()).collect();
    let og = OrderedBipartiteGraph::new(sub, order)?;
    let st = t.restrict(&keep)?;
    let sub_ids: Vec<usize> = map.iter().map(|&v| ids[v]).collect();
    encode_node(&og, &st, k - 1, d, &sub_ids)
}

pub fn decode_equiv(s: &EquivStructure) -> Result<BipartiteGraph> {
    let left = set_from(s.n, s.left.iter().copied());
    let mut all = VertexSet::with_capacity(s.n);
    all.insert_range(..);
    let g = decode_node(&s.root, &all, &left, s.n)?;
    BipartiteGraph::new(g, left)
}

fn decode_node(node: &EquivNode, domain: &VertexSet, left: &VertexSet, n: usize) -> Result<Graph> {
    let mut g = Graph::new(n);
    match node {
        EquivNode::Base { verdict: Verdict::Edgeless } => {}
        EquivNode::Base { verdict: Verdict::Complete } => {
            let right: Vec<usize> = domain.difference(left).collect();
            for u in domain.intersection(left) {
                for &v in &right {
                    g.add_edge(u, v);
                }
            }
        }
        EquivNode::Level { flips, relations } => {
            for f in flips {
                if f.left.iter().chain(&f.right).any(|&v| !domain.contains(v)) {
                    return Err(Error::structural(None, "flip leaves the node's domain"));
                }
            }
            let jobs: Vec<&EquivClass> = relations.iter().flat_map(|r| &r.classes).filter(|c| c.child.is_some()).collect();
            let parts = par::try_map(&jobs, |c| {
                let set = set_from(n, c.vertices.iter().copied());
                if !set.is_subset(domain) {
                    return Err(Error::structural(None, "class leaves the node's domain"));
                }
                let mut gc = decode_node(c.child.as_ref().unwrap(), &set, left, n)?;
                let local: Vec<Flip> = flips.iter().map(|f| f.restrict(&set)).collect();
                toggle_flips(&mut gc, &local);
                Ok(gc)
            })?;
            for gc in &parts {
                g.union_with(gc);
            }
            toggle_flips(&mut g, flips);
        }
    }
    Ok(g)
}

/// Everything decode needs besides the relations themselves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SkelNode {
    Base { verdict: Verdict },
    Level { flips: Vec<Flip>, relations: Vec<SkelRelation> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkelRelation {
    pub key: (usize, usize, usize),
    pub slot: usize,
    /// Children keyed by the least vertex of their class.
    pub children: Vec<(usize, SkelNode)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub version: u32,
    pub n: usize,
    pub left: Vec<usize>,
    pub order: Vec<usize>,
    pub k: usize,
    pub d: usize,
    /// Whether the domain is the bipartite gadget of the original graph.
    pub gadget: bool,
    pub slots: usize,
    /// Slots with a class of two or more vertices, in the order they are stored.
    pub realized: Vec<usize>,
    pub skeleton: SkelNode,
}

impl EquivStructure {
    /// All relation slots (each as a class label per vertex, the label being the
    /// least vertex of the class) plus the sidecar.
    pub fn flat(&self, gadget: bool) -> (Vec<Vec<usize>>, Sidecar) {
        let slots = self.root.slots();
        let mut labels: Vec<Vec<usize>> = (0..slots).map(|_| (0..self.n).collect()).collect();
        let skeleton = flatten(&self.root, 0, &mut labels);
        let realized = (0..slots).filter(|&s| labels[s].iter().enumerate().any(|(v, &l)| l != v)).collect();
        let sidecar = Sidecar {
            version: FORMAT_VERSION,
            n: self.n,
            left: self.left.clone(),
            order: self.order.clone(),
            k: self.k,
            d: self.d,
            gadget,
            slots,
            realized,
            skeleton,
        };
        (labels, sidecar)
    }

    pub fn from_flat(sidecar: &Sidecar, labels: &[Vec<usize>]) -> Result<EquivStructure> {
        if labels.len() != sidecar.slots || labels.iter().any(|l| l.len() != sidecar.n) {
            return Err(Error::structural(None, "relation slots do not match the sidecar"));
        }
        let all: Vec<usize> = (0..sidecar.n).collect();
        let root = rebuild(&sidecar.skeleton, &all, labels)?;
        Ok(EquivStructure {
            n: sidecar.n,
            left: sidecar.left.clone(),
            order: sidecar.order.clone(),
            k: sidecar.k,
            d: sidecar.d,
            root,
        })
    }
}

fn flatten(node: &EquivNode, base: usize, labels: &mut [Vec<usize>]) -> SkelNode {
    match node {
        EquivNode::Base { verdict } => SkelNode::Base { verdict: *verdict },
        EquivNode::Level { flips, relations } => {
            let mut slot = base;
            let mut out = Vec::new();
            for r in relations {
                let mut children = Vec::new();
                for c in &r.classes {
                    let least = c.vertices[0];
                    for &v in &c.vertices {
                        labels[slot][v] = least;
                    }
                    if let Some(child) = &c.child {
                        children.push((least, flatten(child, slot + 1, labels)));
                    }
                }
                let width = r.classes.iter().filter_map(|c| c.child.as_ref().map(EquivNode::slots)).max().unwrap_or(0);
                out.push(SkelRelation { key: r.key, slot, children });
                slot += 1 + width;
            }
            SkelNode::Level { flips: flips.clone(), relations: out }
        }
    }
}

fn rebuild(skel: &SkelNode, domain: &[usize], labels: &[Vec<usize>]) -> Result<EquivNode> {
    match skel {
        SkelNode::Base { verdict } => Ok(EquivNode::Base { verdict: *verdict }),
        SkelNode::Level { flips, relations } => {
            let mut out = Vec::new();
            for r in relations {
                let l = labels.get(r.slot).ok_or_else(|| Error::structural(None, "slot out of range"))?;
                let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
                for &v in domain {
                    groups.entry(l[v]).or_default().push(v);
                }
                let mut children: std::collections::HashMap<usize, &SkelNode> = r.children.iter().map(|(m, c)| (*m, c)).collect();
                let mut classes = Vec::new();
                for (least, vertices) in groups {
                    if vertices[0] != least {
                        return Err(Error::structural(None, format!("class label {least} is not its least vertex")));
                    }
                    let child = match children.remove(&least) {
                        Some(c) => Some(rebuild(c, &vertices, labels)?),
                        None => None,
                    };
                    classes.push(EquivClass { vertices, child });
                }
                if !children.is_empty() {
                    return Err(Error::structural(None, "sidecar names a class the relation does not have"));
                }
                out.push(Relation { key: r.key, classes });
            }
            Ok(EquivNode::Level { flips: flips.clone(), relations: out })
        }
    }
}
