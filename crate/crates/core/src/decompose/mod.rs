//! Freezing decomposition of ordered bipartite graphs of bounded convex
//! twin-width and bounded quasi-ladder index.
//!
//! The output is a division `F`, a short list of flips turning `G` into `G'`,
//! the quotient `H = G'/F`, and a family of star-forest covers of `H` whose
//! stars induce subgraphs of `G` with smaller index.

mod blocks;
mod check;
mod freeze;

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

pub use blocks::{block_bound, partition_blocks, Block, BlockElem};
pub(crate) use freeze::index_at_least;

use crate::colnum::{star_coloring, wcol, scol, OrderedGraph};
use crate::contraction::{verify_convex_width, MergeTree};
use crate::error::{Error, Result};
use crate::graph::{Flip, Graph, OrderedBipartiteGraph, Purity, Side, Sign, VertexSet};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Category {
    /// Frozen by time τ on the side with `d + 1` parts at τ.
    SPrimary,
    /// Frozen by time τ on the other side, with a descendant impure at τ.
    SHard,
    SSimple,
    Late,
    /// Singleton part of the small-side case.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreezeRecord {
    pub part: Vec<usize>,
    pub side: Side,
    pub freeze_time: usize,
    pub category: Category,
    pub tp: Option<Sign>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Star {
    pub center: usize,
    pub leaves: Vec<usize>,
}

/// The cover `U^{i,j,h}`; stars refer to positions in `⪯`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    pub key: (usize, usize, usize),
    pub stars: Vec<Star>,
}

impl Cover {
    pub fn members(&self) -> Vec<usize> {
        let mut m: Vec<usize> =
            self.stars.iter().flat_map(|s| std::iter::once(s.center).chain(s.leaves.iter().copied())).collect();
        m.sort_unstable();
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refinement {
    pub part: usize,
    pub groups: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinGroup {
    pub vertices: Vec<usize>,
    pub neighbors: Vec<usize>,
}

/// Bounds as functions of `d` and `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constants {
    pub d: usize,
    pub k: usize,
    pub p: usize,
    pub r: usize,
    pub ell: u128,
    pub q: usize,
    pub blocks: usize,
    pub twin_groups: usize,
    pub s_primary: usize,
    pub s_hard: usize,
    pub degeneracy: usize,
    pub scol2: usize,
}

impl Constants {
    pub fn new(d: usize, k: usize) -> Self {
        let p = 6 * d * d + 3 * d;
        let r = 2 * d * d + 3 * d + 1;
        let pairs = (p as u128) * (p.saturating_sub(1) as u128) / 2;
        let twins = 1usize.checked_shl(d as u32 + 1).unwrap_or(usize::MAX);
        Constants {
            d,
            k,
            p,
            r,
            ell: pairs * r as u128,
            q: (6 * k * (d + 1) + 3).saturating_add(twins),
            blocks: block_bound(k, d),
            twin_groups: twins,
            s_primary: d + 1,
            s_hard: d * (d + 1),
            degeneracy: 2 * d,
            scol2: 2 * d * d + 3 * d,
        }
    }
}

/// Measured counterparts of [`Constants`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub max_frozen_per_step: usize,
    pub s_primary: usize,
    pub s_hard: usize,
    pub s_simple: usize,
    pub twin_groups: usize,
    pub degeneracy: usize,
    pub scol1: usize,
    pub scol2: usize,
    pub wcol2: usize,
    pub colors: usize,
    pub max_refine_groups: usize,
    pub blocks: usize,
    pub flips: usize,
    pub covers: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub small_side_case: bool,
    pub tau: Option<usize>,
    /// The side with `d + 1` parts at τ.
    pub primary: Side,
    /// The division, listed in `⪯` order.
    pub parts: Vec<FreezeRecord>,
    /// Edges of `H` as position pairs `a < b`.
    pub h_edges: Vec<(usize, usize)>,
    /// Star coloring of `(H, ⪯)`, colors from 0.
    pub coloring: Vec<usize>,
    pub refinements: Vec<Refinement>,
    pub covers: Vec<Cover>,
    /// Blocks over the late parts, as absolute positions.
    pub blocks: Vec<Block>,
    pub twin_groups: Vec<TwinGroup>,
    pub flips: Vec<Flip>,
    pub constants: Constants,
    pub witnesses: Witnesses,
}

struct Entry {
    node: usize,
    set: VertexSet,
    side: Side,
    time: usize,
    category: Category,
    tp: Option<Sign>,
    min: usize,
}

pub fn decompose(g: &OrderedBipartiteGraph, tree: &MergeTree, k: usize, d: usize) -> Result<Decomposition> {
    if k < 2 || d < 2 {
        return Err(Error::input(format!("decompose needs k >= 2 and d >= 2 (got k={k}, d={d})")));
    }
    let width = verify_convex_width(g, tree)?.width;
    if width > d {
        return Err(Error::certified("convex-width", format!("sequence has width {width} > d = {d}")));
    }
    let bip = g.bip();
    let n_left = bip.left().count_ones(..);
    let n_right = bip.right().count_ones(..);
    let out = if n_left <= d || n_right <= d {
        small_side(g, k, d, if n_left <= d { Side::Left } else { Side::Right })
    } else {
        main_case(g, tree, k, d)?
    };
    out.verify(g)?;
    Ok(out)
}

fn small_side(g: &OrderedBipartiteGraph, k: usize, d: usize, small: Side) -> Decomposition {
    let bip = g.bip();
    let n = g.n();
    let parts = g
        .order()
        .iter()
        .map(|&v| FreezeRecord {
            part: vec![v],
            side: bip.side(v),
            freeze_time: 0,
            category: Category::Trivial,
            tp: None,
        })
        .collect::<Vec<_>>();
    let flips: Vec<Flip> = bip
        .side_set(small)
        .ones()
        .filter(|&u| !bip.graph().neighbors(u).is_clear())
        .map(|u| {
            let nb: Vec<usize> = bip.graph().neighbors(u).ones().collect();
            match small {
                Side::Left => Flip::new(vec![u], nb),
                Side::Right => Flip::new(nb, vec![u]),
            }
        })
        .collect();
    let witnesses = Witnesses { flips: flips.len(), colors: usize::from(n > 0), ..Witnesses::default() };
    Decomposition {
        n,
        k,
        d,
        small_side_case: true,
        tau: None,
        primary: small,
        coloring: vec![0; parts.len()],
        parts,
        h_edges: Vec::new(),
        refinements: Vec::new(),
        covers: Vec::new(),
        blocks: Vec::new(),
        twin_groups: Vec::new(),
        flips,
        constants: Constants::new(d, k),
        witnesses,
    }
}

fn main_case(g: &OrderedBipartiteGraph, tree: &MergeTree, k: usize, d: usize) -> Result<Decomposition> {
    let bip = g.bip();
    let graph = bip.graph();
    let left = bip.left();
    let n = g.n();
    let c = Constants::new(d, k);
    let sets = tree.node_sets();
    let side: Vec<Side> =
        sets.iter().map(|s| if s.is_subset(left) { Side::Left } else { Side::Right }).collect();

    let fz = freeze::freeze(graph, left, tree, &sets, &side, k, d)?;
    let tau = fz
        .counts
        .iter()
        .position(|&(l, r)| l > d && r > d)
        .map(|i| i + 1)
        .ok_or_else(|| Error::certified("tau", "both sides never exceed d parts"))?;
    let (pl, pr) = fz.counts[tau - 1];
    let primary = if pl == d + 1 {
        Side::Left
    } else if pr == d + 1 {
        Side::Right
    } else {
        return Err(Error::certified("tau", format!("neither side has d + 1 parts at τ = {tau}")));
    };
    let secondary = primary.opposite();

    let live_tau = tree.live_at(tau);
    let p_tau: Vec<usize> = live_tau.iter().copied().filter(|&x| side[x] == primary).collect();
    let q_tau: Vec<usize> = live_tau.iter().copied().filter(|&x| side[x] == secondary).collect();
    let impure_tau: Vec<usize> = q_tau
        .iter()
        .copied()
        .filter(|&dq| p_tau.iter().any(|&cp| graph.purity(&sets[cp], &sets[dq]) == Purity::Impure))
        .collect();

    let mut entries: Vec<Entry> = Vec::new();
    for &(node, time) in &fz.frozen {
        let category = if time > tau {
            Category::Late
        } else if side[node] == primary {
            Category::SPrimary
        } else if impure_tau.iter().any(|&dq| tree.is_ancestor(node, dq)) {
            Category::SHard
        } else {
            Category::SSimple
        };
        entries.push(Entry {
            node,
            set: sets[node].clone(),
            side: side[node],
            time,
            category,
            tp: None,
            min: sets[node].ones().next().unwrap(),
        });
    }
    let count = |cat: Category| entries.iter().filter(|e| e.category == cat).count();
    let (s_primary, s_hard, s_simple) = (count(Category::SPrimary), count(Category::SHard), count(Category::SSimple));
    if s_primary > c.s_primary {
        return Err(Error::certified("vc", format!("{s_primary} parts in S on the primary side")));
    }
    if s_hard > c.s_hard {
        return Err(Error::certified("simple-hard", format!("{s_hard} hard parts")));
    }

    // Twins among the simple parts, keyed by their neighbourhood on the primary side.
    let primary_set = bip.side_set(primary);
    let mut twin_index: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut twin_groups: Vec<TwinGroup> = Vec::new();
    let mut simple_vertices: Vec<usize> = entries
        .iter()
        .filter(|e| e.category == Category::SSimple)
        .flat_map(|e| e.set.ones())
        .collect();
    simple_vertices.sort_unstable();
    for v in simple_vertices {
        let mut key = graph.neighbors(v).clone();
        key.intersect_with(primary_set);
        let idx = *twin_index.entry(key.clone()).or_insert_with(|| {
            twin_groups.push(TwinGroup { vertices: Vec::new(), neighbors: key.ones().collect() });
            twin_groups.len() - 1
        });
        twin_groups[idx].vertices.push(v);
    }
    if twin_groups.len() > c.twin_groups {
        return Err(Error::certified("simple-hard", format!("{} twin groups", twin_groups.len())));
    }

    // Types of late parts.
    let late_idx: Vec<usize> = (0..entries.len()).filter(|&i| entries[i].category == Category::Late).collect();
    let tps = par::try_map(&late_idx, |&i| late_type(g, tree, &sets, &side, &entries[i]))?;
    for (&i, tp) in late_idx.iter().zip(tps) {
        entries[i].tp = Some(tp);
    }

    let rank = |cat: Category| match cat {
        Category::SPrimary => 0,
        Category::SHard => 1,
        Category::SSimple => 2,
        Category::Late | Category::Trivial => 3,
    };
    entries.sort_by_key(|e| {
        let t = if e.category == Category::Late { e.time } else { 0 };
        (rank(e.category), t, e.min)
    });
    let f = entries.len();
    let s_len = f - late_idx.len();

    // H: for A ≺ B, the rule depends on whether B is late.
    let rows: Vec<Vec<usize>> = par::map_range(f, |b| {
        let eb = &entries[b];
        (0..b)
            .filter(|&a| {
                let ea = &entries[a];
                if ea.side == eb.side {
                    return false;
                }
                match eb.category {
                    Category::Late => {
                        ea.category != Category::SSimple
                            && graph.purity(&ea.set, &eb.set).sign() != eb.tp
                    }
                    _ => {
                        ea.category == Category::SPrimary
                            && eb.category == Category::SHard
                            && graph.purity(&ea.set, &eb.set) != Purity::Anticomplete
                    }
                }
            })
            .collect()
    });
    let mut h = Graph::new(f);
    let mut h_edges = Vec::new();
    for (b, row) in rows.iter().enumerate() {
        for &a in row {
            h.add_edge(a, b);
            h_edges.push((a, b));
        }
    }
    h_edges.sort_unstable();
    let oh = OrderedGraph::natural(h);
    let degeneracy = oh.degeneracy();
    if degeneracy > c.degeneracy {
        return Err(Error::certified("degeneracy", format!("{degeneracy} earlier neighbours, bound {}", c.degeneracy)));
    }
    let scol1 = scol(&oh, 1);
    let scol2 = scol(&oh, 2);
    if scol2 > c.scol2 {
        return Err(Error::certified("scols", format!("scol_2 = {scol2}, bound {}", c.scol2)));
    }
    let wcol2 = wcol(&oh, 2);
    if wcol2 > c.p {
        return Err(Error::certified("scol-wcol", format!("wcol_2 = {wcol2}, bound {}", c.p)));
    }
    let lambda = star_coloring(&oh);

    // Refinements of later neighbourhoods.
    let with_later: Vec<usize> =
        (0..f).filter(|&a| oh.graph().neighbors(a).ones().any(|b| b > a)).collect();
    let refinements = par::try_map(&with_later, |&a| {
        refine(graph, left, tree, &entries, oh.graph(), a, tau, k, c.r)
    })?;
    let mut group_of: HashMap<(usize, usize), usize> = HashMap::new();
    for rf in &refinements {
        for (h, grp) in rf.groups.iter().enumerate() {
            for &b in grp {
                group_of.insert((rf.part, b), h);
            }
        }
    }

    // Covers U^{i,j,h}: edge (a, b) with a ≺ b sits in the star centred at a.
    let mut cover_map: HashMap<(usize, usize, usize), Vec<Star>> = HashMap::new();
    for &(a, b) in &h_edges {
        let (ca, cb) = (lambda.colors[a], lambda.colors[b]);
        let key = (ca.min(cb) + 1, ca.max(cb) + 1, group_of[&(a, b)] + 1);
        let stars = cover_map.entry(key).or_default();
        match stars.iter_mut().find(|s| s.center == a) {
            Some(s) => s.leaves.push(b),
            None => stars.push(Star { center: a, leaves: vec![b] }),
        }
    }
    let mut covers: Vec<Cover> = cover_map.into_iter().map(|(key, stars)| Cover { key, stars }).collect();
    covers.sort_by_key(|cv| cv.key);

    // Blocks and flips.
    let elems: Vec<BlockElem> =
        entries[s_len..].iter().map(|e| BlockElem { side: e.side, tp: e.tp.unwrap() }).collect();
    let mut blocks = partition_blocks(&elems, k, d)?;
    for b in &mut blocks {
        b.start += s_len;
        b.end += s_len;
    }
    let flips = assemble_flips(n, left, &entries, &blocks, &twin_groups, primary);
    if flips.len() > c.q {
        return Err(Error::certified("flip-count", format!("{} flips, bound {}", flips.len(), c.q)));
    }

    let witnesses = Witnesses {
        max_frozen_per_step: fz.max_per_step,
        s_primary,
        s_hard,
        s_simple,
        twin_groups: twin_groups.len(),
        degeneracy,
        scol1,
        scol2,
        wcol2,
        colors: lambda.used(),
        max_refine_groups: refinements.iter().map(|r| r.groups.len()).max().unwrap_or(0),
        blocks: blocks.len(),
        flips: flips.len(),
        covers: covers.len(),
    };
    let parts = entries
        .iter()
        .map(|e| FreezeRecord {
            part: e.set.ones().collect(),
            side: e.side,
            freeze_time: e.time,
            category: e.category,
            tp: e.tp,
        })
        .collect();
    Ok(Decomposition {
        n,
        k,
        d,
        small_side_case: false,
        tau: Some(tau),
        primary,
        parts,
        h_edges,
        coloring: lambda.colors,
        refinements,
        covers,
        blocks,
        twin_groups,
        flips,
        constants: c,
        witnesses,
    })
}

/// Type of a late part frozen at `t`: purity type of its ancestor `B` in
/// `P_{t-1}` against everything on the other side outside the parts impure with `B`.
fn late_type(
    g: &OrderedBipartiteGraph,
    tree: &MergeTree,
    sets: &[VertexSet],
    side: &[Side],
    e: &Entry,
) -> Result<Sign> {
    let graph = g.graph();
    let t = e.time;
    let b = tree.ancestor_at(e.node, t - 1);
    let opp = e.side.opposite();
    let mut w = g.bip().side_set(opp).clone();
    for x in tree.live_at(t - 1) {
        if side[x] == opp && graph.purity(&sets[b], &sets[x]) == Purity::Impure {
            w.difference_with(&sets[x]);
        }
    }
    if w.is_clear() {
        return Err(Error::certified("index", format!("empty W for the part frozen at time {t}")));
    }
    graph.purity(&sets[b], &w).sign().ok_or_else(|| {
        Error::certified(
            "index",
            format!("ancestor of the part frozen at {t} is impure towards W; the index exceeds k"),
        )
    })
}

/// Splits the later H-neighbours of `a` into groups whose union still has index below `k`.
#[allow(clippy::too_many_arguments)]
fn refine(
    graph: &Graph,
    left: &VertexSet,
    tree: &MergeTree,
    entries: &[Entry],
    h: &Graph,
    a: usize,
    tau: usize,
    k: usize,
    r: usize,
) -> Result<Refinement> {
    let t_prime = entries[a].time.max(tau);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut by_ancestor: Vec<(usize, Vec<usize>)> = Vec::new();
    for b in h.neighbors(a).ones().filter(|&b| b > a) {
        if entries[b].time <= t_prime {
            groups.push(vec![b]);
        } else {
            let anc = tree.ancestor_at(entries[b].node, t_prime + 1);
            match by_ancestor.iter_mut().find(|(x, _)| *x == anc) {
                Some((_, v)) => v.push(b),
                None => by_ancestor.push((anc, vec![b])),
            }
        }
    }
    groups.extend(by_ancestor.into_iter().map(|(_, v)| v));
    if groups.len() > r {
        return Err(Error::certified("refine", format!("{} groups, bound {r}", groups.len())));
    }
    for grp in &groups {
        let mut u = FixedBitSet::with_capacity(graph.n());
        for &b in grp {
            u.union_with(&entries[b].set);
        }
        if index_at_least(graph, left, &entries[a].set, &u, k) {
            return Err(Error::certified("refine", format!("a group of part {a} reaches index {k}")));
        }
    }
    Ok(Refinement { part: a, groups })
}

fn assemble_flips(
    n: usize,
    left: &VertexSet,
    entries: &[Entry],
    blocks: &[Block],
    twins: &[TwinGroup],
    primary: Side,
) -> Vec<Flip> {
    let mut flips = Vec::new();
    let mut push = |x: &VertexSet, y: &VertexSet| {
        if x.is_clear() || y.is_clear() {
            return;
        }
        if x.is_subset(left) {
            flips.push(Flip::from_sets(x, y));
        } else {
            flips.push(Flip::from_sets(y, x));
        }
    };
    let union_of = |pred: &dyn Fn(&Entry) -> bool, range: std::ops::Range<usize>| {
        let mut s = FixedBitSet::with_capacity(n);
        for e in &entries[range] {
            if pred(e) {
                s.union_with(&e.set);
            }
        }
        s
    };
    let mut prev_q = union_of(&|e| e.category == Category::SHard, 0..entries.len());
    let mut prev_p = union_of(&|e| e.category == Category::SPrimary, 0..entries.len());
    for b in blocks {
        let range = b.start..b.end;
        let plus = union_of(&|e| e.tp == Some(Sign::Plus), range.clone());
        let in_p = union_of(&|e| e.side == primary, range.clone());
        let in_q = union_of(&|e| e.side != primary, range.clone());
        match b.side {
            Some(s) if s == primary => push(&prev_q, &plus),
            Some(_) => push(&prev_p, &plus),
            None if b.sign == Some(Sign::Plus) => {
                push(&prev_q, &in_p);
                push(&prev_p, &in_q);
                push(&in_p, &in_q);
            }
            None => {}
        }
        prev_q.union_with(&in_q);
        prev_p.union_with(&in_p);
    }
    for tg in twins {
        let c = crate::graph::set_from(n, tg.vertices.iter().copied());
        let nb = crate::graph::set_from(n, tg.neighbors.iter().copied());
        push(&c, &nb);
    }
    flips
}
