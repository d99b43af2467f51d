//! Colouring with few cograph classes, and the resulting χ-bound.

mod cotree;

pub use cotree::{cotree, CoNode, Cotree};

use serde::{Deserialize, Serialize};

use crate::contraction::{verify_width, MergeTree};
use crate::error::{Error, Result};
use crate::graph::{members, set_from, Graph, Purity, Sign, Verdict, VertexSet};
use crate::ladder::{graph_index_at_least, measure_graph_index};
use crate::oracle::{self, CHROMATIC_LIMIT};
use crate::par;

/// One frozen set together with its type and colours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrozenPart {
    pub vertices: Vec<usize>,
    pub freeze_time: usize,
    pub tp: Sign,
    pub g: usize,
    pub f: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiPart {
    pub part: FrozenPart,
    pub child: ChiNode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChiNode {
    Base { verdict: Verdict, vertices: Vec<usize> },
    Level { k: usize, parts: Vec<ChiPart> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProperColoring {
    pub colors: Vec<usize>,
    pub count: usize,
    pub omega: usize,
    pub omega_exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiCertificate {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub root: ChiNode,
    pub class_of: Vec<usize>,
    pub classes: usize,
    pub coloring: Option<ProperColoring>,
}

pub fn class_bound(k: usize, d: usize) -> u128 {
    (2 * d as u128 + 4).saturating_pow(k.saturating_sub(1) as u32)
}

impl ChiCertificate {
    pub fn class_bound(&self) -> u128 {
        class_bound(self.k, self.d)
    }

    pub fn bound_ok(&self) -> bool {
        let classes_ok = self.classes as u128 <= self.class_bound();
        classes_ok
            && self
                .coloring
                .as_ref()
                .is_none_or(|c| c.count as u128 <= (self.classes as u128) * c.omega as u128)
    }

    /// Re-checks the certificate against `g` from scratch: classes are cographs,
    /// the class count is within bound, every level's classes are pairwise pure
    /// with one type, and the colouring (if any) is proper.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        if g.n() != self.n || self.class_of.len() != self.n {
            return Err(Error::input("certificate and graph have different vertex counts"));
        }
        check_node(g, &self.root, self.d)?;
        if self.classes as u128 > self.class_bound() {
            return Err(Error::certified("class-count", format!("{} classes exceed {}", self.classes, self.class_bound())));
        }
        let mut recomputed = vec![Vec::new(); self.n];
        collect_paths(&self.root, &mut Vec::new(), &mut recomputed);
        let (ids, count) = dense_ids(&recomputed);
        if count != self.classes || !same_partition(&ids, &self.class_of) {
            return Err(Error::structural(None, "class map disagrees with the recursion tree"));
        }
        for set in class_sets(&self.class_of, self.classes) {
            if let Err(p) = cotree(g, &set) {
                return Err(Error::certified("cograph-class", format!("class contains induced P4 {p:?}")));
            }
        }
        if let Some(c) = &self.coloring {
            if c.colors.len() != self.n || g.edges().any(|(u, v)| c.colors[u] == c.colors[v]) {
                return Err(Error::structural(None, "colouring is not proper"));
            }
            let used = c.colors.iter().collect::<std::collections::BTreeSet<_>>().len();
            if used > c.count {
                return Err(Error::structural(None, "colouring uses more colours than reported"));
            }
            if c.count as u128 > self.classes as u128 * c.omega as u128 {
                return Err(Error::certified("chi-bound", format!("{} colours exceed {} x {}", c.count, self.classes, c.omega)));
            }
        }
        Ok(())
    }
}

fn check_node(g: &Graph, node: &ChiNode, d: usize) -> Result<()> {
    match node {
        ChiNode::Base { verdict, vertices } => {
            if Verdict::of(&g.induced(vertices)) != Some(*verdict) && vertices.len() > 1 {
                return Err(Error::structural(None, "base verdict does not match the graph"));
            }
            Ok(())
        }
        ChiNode::Level { parts, .. } => {
            let sets: Vec<VertexSet> = parts.iter().map(|p| set_from(g.n(), p.part.vertices.iter().copied())).collect();
            let frozen: Vec<&FrozenPart> = parts.iter().map(|p| &p.part).collect();
            check_classes(g, &frozen, &sets, d)?;
            parts.iter().try_for_each(|p| check_node(g, &p.child, d))
        }
    }
}

fn check_classes(g: &Graph, parts: &[&FrozenPart], sets: &[VertexSet], d: usize) -> Result<()> {
    for (i, a) in parts.iter().enumerate() {
        if a.f == 0 || a.f > 2 * d + 4 {
            return Err(Error::certified("class-colouring", format!("colour {} outside [1, {}]", a.f, 2 * d + 4)));
        }
        for (j, b) in parts.iter().enumerate().skip(i + 1) {
            if a.f != b.f {
                continue;
            }
            let want = if a.f % 2 == 1 { Purity::Complete } else { Purity::Anticomplete };
            if g.purity(&sets[i], &sets[j]) != want {
                return Err(Error::certified(
                    "class-colouring",
                    format!("parts with colour {} are not {:?}", a.f, want),
                ));
            }
        }
    }
    Ok(())
}

fn collect_paths(node: &ChiNode, path: &mut Vec<usize>, out: &mut [Vec<usize>]) {
    match node {
        ChiNode::Base { vertices, .. } => {
            for &v in vertices {
                out[v] = path.clone();
            }
        }
        ChiNode::Level { parts, .. } => {
            for p in parts {
                path.push(p.part.f);
                collect_paths(&p.child, path, out);
                path.pop();
            }
        }
    }
}

fn dense_ids(paths: &[Vec<usize>]) -> (Vec<usize>, usize) {
    let mut distinct: Vec<&Vec<usize>> = paths.iter().collect();
    distinct.sort();
    distinct.dedup();
    let ids = paths.iter().map(|p| distinct.binary_search(&p).unwrap()).collect();
    (ids, distinct.len())
}

fn same_partition(a: &[usize], b: &[usize]) -> bool {
    let mut map = std::collections::HashMap::new();
    let mut back = std::collections::HashMap::new();
    a.iter().zip(b).all(|(x, y)| *map.entry(x).or_insert(y) == y && *back.entry(y).or_insert(x) == x)
}

fn class_sets(class_of: &[usize], classes: usize) -> Vec<VertexSet> {
    let mut sets = vec![VertexSet::with_capacity(class_of.len()); classes];
    for (v, &c) in class_of.iter().enumerate() {
        sets[c].insert(v);
    }
    sets
}

/// Freezes parts along the one-root sequence `t` (width at most `d`) as soon as
/// their induced subgraph has index below `k`, then colours the frozen parts with
/// `[2d + 4]` so that each colour class is pairwise complete or pairwise anticomplete.
/// Returned parts are in freezing order.
pub fn cograph_partition(g: &Graph, t: &MergeTree, k: usize, d: usize) -> Result<Vec<FrozenPart>> {
    if k < 2 {
        return Err(Error::input("cograph_partition needs k >= 2"));
    }
    let t = if t.roots().len() > 1 { t.with_common_root()? } else { t.clone() };
    if t.n() != g.n() {
        return Err(Error::input("tree and graph have different vertex counts"));
    }
    let n = g.n();
    let sets = t.node_sets();
    let low = |x: usize| !graph_index_at_least(g, &sets[x], k);

    // (node, freeze time), in freezing order
    let mut frozen: Vec<(usize, usize)> = Vec::new();
    let mut active = vec![false; t.node_count()];
    let root = t.roots()[0];
    if low(root) {
        frozen.push((root, 1));
    } else {
        active[root] = true;
    }
    for step in 1..n {
        let x = t.node_at_time(step);
        if !active[x] {
            continue;
        }
        let (a, b) = t.children(x).unwrap();
        let verdicts = par::map(&[a, b], |&c| low(c));
        let mut now: Vec<usize> = Vec::new();
        for (c, is_low) in [a, b].into_iter().zip(verdicts) {
            if is_low {
                now.push(c);
            } else {
                active[c] = true;
            }
        }
        now.sort_by_key(|&c| sets[c].ones().next());
        frozen.extend(now.into_iter().map(|c| (c, step + 1)));
    }
    if frozen.iter().map(|&(x, _)| sets[x].count_ones(..)).sum::<usize>() != n {
        return Err(Error::certified("frozen-partition", "frozen sets do not cover the vertex set"));
    }

    let tps = par::map_range(frozen.len(), |i| light_type(g, &t, &sets, &frozen, i, d));
    let tps: Vec<Sign> = tps.into_iter().collect::<Result<_>>()?;

    // H: A before B adjacent iff the pair mismatches tp(B)
    let m = frozen.len();
    let mut g_col = vec![0usize; m];
    for j in 0..m {
        let want = match tps[j] {
            Sign::Plus => Purity::Complete,
            Sign::Minus => Purity::Anticomplete,
        };
        let back: Vec<usize> = (0..j).filter(|&i| g.purity(&sets[frozen[i].0], &sets[frozen[j].0]) != want).collect();
        if back.len() > d + 1 {
            return Err(Error::certified(
                "light-degeneracy",
                format!("frozen set has {} earlier H-neighbours, more than {}", back.len(), d + 1),
            ));
        }
        let used: Vec<usize> = back.iter().map(|&i| g_col[i]).collect();
        g_col[j] = (1..).find(|c| !used.contains(c)).unwrap();
    }

    let parts: Vec<FrozenPart> = frozen
        .iter()
        .enumerate()
        .map(|(i, &(x, time))| FrozenPart {
            vertices: members(&sets[x]),
            freeze_time: time,
            tp: tps[i],
            g: g_col[i],
            f: match tps[i] {
                Sign::Plus => 2 * g_col[i] - 1,
                Sign::Minus => 2 * g_col[i],
            },
        })
        .collect();
    let refs: Vec<&FrozenPart> = parts.iter().collect();
    let part_sets: Vec<VertexSet> = frozen.iter().map(|&(x, _)| sets[x].clone()).collect();
    check_classes(g, &refs, &part_sets, d)?;
    Ok(parts)
}

/// Type of the `i`-th frozen set `B`: the purity of `B` towards the union `W` of
/// earlier frozen sets that contain no part of the previous partition impure
/// with the parent of `B`. With `W` empty the type is that of `B` against the
/// rest of the graph when pure (`+` if there is no rest), and `-` otherwise.
fn light_type(g: &Graph, t: &MergeTree, sets: &[VertexSet], frozen: &[(usize, usize)], i: usize, d: usize) -> Result<Sign> {
    let (b, time) = frozen[i];
    let fallback = || {
        let mut rest = VertexSet::with_capacity(g.n());
        rest.insert_range(..);
        rest.difference_with(&sets[b]);
        if rest.is_clear() {
            return Sign::Plus;
        }
        g.purity(&sets[b], &rest).sign().unwrap_or(Sign::Minus)
    };
    let earlier: Vec<usize> = frozen.iter().take_while(|&&(_, s)| s < time).map(|&(x, _)| x).collect();
    if time == 1 || earlier.is_empty() {
        return Ok(fallback());
    }
    let parent = t.parent(b).unwrap();
    let impure: Vec<usize> = t
        .live_at(time - 1)
        .into_iter()
        .filter(|&y| y != parent && g.purity(&sets[parent], &sets[y]) == Purity::Impure)
        .collect();
    let near: Vec<usize> = earlier.iter().copied().filter(|&a| impure.iter().any(|&y| t.is_ancestor(a, y))).collect();
    if near.len() > d {
        return Err(Error::certified(
            "light-sandwich",
            format!("{} earlier frozen sets near the parent, more than {d}", near.len()),
        ));
    }
    let mut w = VertexSet::with_capacity(g.n());
    for &a in earlier.iter().filter(|a| !near.contains(a)) {
        w.union_with(&sets[a]);
    }
    if w.is_clear() {
        return Ok(fallback());
    }
    g.purity(&sets[b], &w)
        .sign()
        .ok_or_else(|| Error::certified("light-sandwich", "frozen set is impure towards the far frozen sets"))
}

/// Recursive class colouring: classes are tuples of level colours.
pub fn cograph_color(g: &Graph, t: &MergeTree, k: usize, d: usize) -> Result<ChiCertificate> {
    if k < 1 {
        return Err(Error::input("cograph_color needs k >= 1"));
    }
    let width = verify_width(g, t)?.width;
    if width > d {
        return Err(Error::input(format!("sequence has width {width}, more than d = {d}")));
    }
    let ids: Vec<usize> = (0..g.n()).collect();
    let root = color_level(g, t, k, d, &ids)?;
    let mut paths = vec![Vec::new(); g.n()];
    collect_paths(&root, &mut Vec::new(), &mut paths);
    let (class_of, classes) = dense_ids(&paths);
    let cert = ChiCertificate { n: g.n(), k, d, root, class_of, classes, coloring: None };
    if classes as u128 > cert.class_bound() {
        return Err(Error::certified("class-count", format!("{classes} classes exceed {}", cert.class_bound())));
    }
    for set in class_sets(&cert.class_of, classes) {
        if let Err(p) = cotree(g, &set) {
            return Err(Error::certified("cograph-class", format!("class contains induced P4 {p:?}")));
        }
    }
    Ok(cert)
}

fn color_level(g: &Graph, t: &MergeTree, k: usize, d: usize, ids: &[usize]) -> Result<ChiNode> {
    if g.n() == 0 {
        return Ok(ChiNode::Base { verdict: Verdict::Edgeless, vertices: vec![] });
    }
    if k == 1 {
        let verdict = Verdict::of(g).ok_or_else(|| {
            Error::certified("index-one", format!("graph on {} vertices of index 1 is neither complete nor edgeless", g.n()))
        })?;
        return Ok(ChiNode::Base { verdict, vertices: ids.to_vec() });
    }
    let parts = cograph_partition(g, t, k, d)?;
    let children = par::try_map(&parts, |p| {
        let sub = g.induced(&p.vertices);
        let keep = set_from(g.n(), p.vertices.iter().copied());
        let st = t.restrict(&keep)?;
        let sub_ids: Vec<usize> = p.vertices.iter().map(|&v| ids[v]).collect();
        color_level(&sub, &st, k - 1, d, &sub_ids)
    })?;
    let parts = parts
        .into_iter()
        .zip(children)
        .map(|(mut part, child)| {
            part.vertices = part.vertices.iter().map(|&v| ids[v]).collect();
            ChiPart { part, child }
        })
        .collect();
    Ok(ChiNode::Level { k, parts })
}

/// Measures `k` and `d`, builds the class colouring, and colours every class
/// optimally through its cotree with a palette of its own.
pub fn chi_bounded_color(g: &Graph, t: &MergeTree) -> Result<ChiCertificate> {
    chi_bounded_color_with(g, t, measure_graph_index(g).max(1))
}

/// As `chi_bounded_color` with a caller-supplied index bound `k`.
pub fn chi_bounded_color_with(g: &Graph, t: &MergeTree, k: usize) -> Result<ChiCertificate> {
    let d = verify_width(g, t)?.width;
    let mut cert = cograph_color(g, t, k, d)?;
    let n = g.n();
    let sets = class_sets(&cert.class_of, cert.classes);
    let per_class = par::map(&sets, |s| {
        let tree = cotree(g, s).expect("classes were checked to be cographs");
        tree.coloring(n)
    });
    let mut colors = vec![0; n];
    let mut offset = 0;
    let mut class_omega = 0;
    for (s, (cols, used)) in sets.iter().zip(per_class) {
        for v in s.ones() {
            colors[v] = offset + cols[v];
        }
        offset += used;
        class_omega = class_omega.max(used);
    }
    let (omega, omega_exact) = if n <= CHROMATIC_LIMIT { (oracle::clique(g)?, true) } else { (class_omega, false) };
    cert.coloring = Some(ProperColoring { colors, count: offset, omega, omega_exact });
    cert.verify(g)?;
    Ok(cert)
}
