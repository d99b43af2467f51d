use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::{freeze::index_at_least, Category, Constants, Decomposition};
use crate::colnum::{scol, verify_star_coloring, wcol, OrderedGraph};
use crate::error::{Error, Result};
use crate::graph::{apply_flips, quotient, set_from, BipartiteGraph, Division, Graph, OrderedBipartiteGraph};
use crate::par;

impl Decomposition {
    pub fn division(&self) -> Result<Division> {
        Division::new(self.n, self.parts.iter().map(|p| set_from(self.n, p.part.iter().copied())).collect())
    }

    /// `H` with part `i` (in `⪯` order) as vertex `i`.
    pub fn h_graph(&self) -> Graph {
        let mut h = Graph::new(self.parts.len());
        for &(a, b) in &self.h_edges {
            h.add_edge(a, b);
        }
        h
    }

    pub fn h_bipartite(&self) -> Result<BipartiteGraph> {
        let f = self.parts.len();
        let left = set_from(f, (0..f).filter(|&i| self.parts[i].side == crate::graph::Side::Left));
        BipartiteGraph::new(self.h_graph(), left)
    }

    /// Re-checks everything the decomposition promises, using only `G` and the record.
    pub fn verify(&self, g: &OrderedBipartiteGraph) -> Result<()> {
        let fail = |lemma: &'static str, detail: String| Err(Error::certified(lemma, detail));
        if g.n() != self.n {
            return Err(Error::input("decomposition and graph have different vertex counts"));
        }
        if self.constants != Constants::new(self.d, self.k) {
            return fail("constants", "recorded constants do not match d and k".into());
        }
        let c = &self.constants;
        let bip = g.bip();
        let division = self.division()?;
        division.check_convex(g)?;
        for (i, p) in self.parts.iter().enumerate() {
            if p.part.iter().any(|&v| bip.side(v) != p.side) {
                return Err(Error::input(format!("part {i} has the wrong side label")));
            }
            if p.tp.is_some() != (p.category == Category::Late) {
                return Err(Error::input(format!("part {i}: type present iff late")));
            }
        }
        let f = self.parts.len();
        for &(a, b) in &self.h_edges {
            if a >= b || b >= f || self.parts[a].side == self.parts[b].side {
                return Err(Error::input(format!("bad H edge ({a},{b})")));
            }
        }

        let flipped = apply_flips(bip, &self.flips)?;
        let q = quotient(&flipped, &division)?;
        let h = self.h_graph();
        if q.graph() != &h {
            return fail("flip-construction", "H differs from the quotient of the flipped graph".into());
        }
        if self.flips.len() > c.q {
            return fail("flip-count", format!("{} flips, bound {}", self.flips.len(), c.q));
        }
        if self.blocks.len() > c.blocks {
            return fail("few-blocks", format!("{} blocks, bound {}", self.blocks.len(), c.blocks));
        }
        if self.covers.len() as u128 > c.ell {
            return fail("cover-count", format!("{} covers, bound {}", self.covers.len(), c.ell));
        }

        let oh = OrderedGraph::natural(h.clone());
        if self.coloring.len() != f || !verify_star_coloring(&oh, &self.coloring) {
            return fail("star-coloring", "coloring of H is not a star coloring".into());
        }
        if self.coloring.iter().any(|&x| x >= c.p.max(1)) {
            return fail("star-coloring", format!("more than p = {} colors", c.p));
        }
        if !self.small_side_case {
            let deg = oh.degeneracy();
            if deg > c.degeneracy {
                return fail("degeneracy", format!("{deg} > {}", c.degeneracy));
            }
            let s2 = scol(&oh, 2);
            if s2 > c.scol2 {
                return fail("scols", format!("{s2} > {}", c.scol2));
            }
            let w2 = wcol(&oh, 2);
            if w2 > c.p {
                return fail("scol-wcol", format!("{w2} > {}", c.p));
            }
            let count = |cat: Category| self.parts.iter().filter(|p| p.category == cat).count();
            if count(Category::SPrimary) > c.s_primary {
                return fail("vc", "too many primary parts in S".into());
            }
            if count(Category::SHard) > c.s_hard {
                return fail("simple-hard", "too many hard parts".into());
            }
            if self.twin_groups.len() > c.twin_groups {
                return fail("simple-hard", "too many twin groups".into());
            }
            let mut per_step: HashMap<(usize, crate::graph::Side), usize> = HashMap::new();
            for p in &self.parts {
                *per_step.entry((p.freeze_time, p.side)).or_default() += 1;
            }
            if let Some((&(t, _), &m)) = per_step.iter().find(|(_, &m)| m > self.d) {
                return fail("freezing-tiny", format!("{m} parts froze at time {t}"));
            }
        }

        // Condition (1): every edge of H lies in a star of some cover.
        let mut covered: HashMap<(usize, usize), ()> = HashMap::new();
        for cv in &self.covers {
            for s in &cv.stars {
                for &l in &s.leaves {
                    covered.insert((s.center.min(l), s.center.max(l)), ());
                }
            }
        }
        if let Some(&(a, b)) = self.h_edges.iter().find(|e| !covered.contains_key(e)) {
            return fail("condition-1", format!("H edge ({a},{b}) is in no cover"));
        }

        // Condition (2): each cover induces exactly its stars, and each star has index < k.
        for cv in &self.covers {
            let members = cv.members();
            let mut declared: HashMap<(usize, usize), ()> = HashMap::new();
            for s in &cv.stars {
                for &l in &s.leaves {
                    if !h.has_edge(s.center, l) {
                        return fail("condition-2", format!("cover {:?}: star edge not in H", cv.key));
                    }
                    declared.insert((s.center.min(l), s.center.max(l)), ());
                }
            }
            let mut dedup = members.clone();
            dedup.dedup();
            if dedup.len() != members.len() {
                return fail("condition-2", format!("cover {:?}: a part appears in two stars", cv.key));
            }
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    if h.has_edge(a, b) && !declared.contains_key(&(a, b)) {
                        return fail("condition-2", format!("cover {:?} is not a star forest", cv.key));
                    }
                }
            }
        }
        let stars: Vec<(usize, Vec<usize>)> = self
            .covers
            .iter()
            .flat_map(|cv| cv.stars.iter().map(|s| (s.center, s.leaves.clone())))
            .collect();
        let n = self.n;
        let graph = bip.graph();
        let bad = par::any(&stars, |(center, leaves)| {
            let a = set_from(n, self.parts[*center].part.iter().copied());
            let mut u = FixedBitSet::with_capacity(n);
            for &l in leaves {
                u.extend(self.parts[l].part.iter().copied());
            }
            index_at_least(graph, bip.left(), &a, &u, self.k)
        });
        if bad {
            return fail("condition-2", format!("a star induces a subgraph of index >= {}", self.k));
        }
        Ok(())
    }
}
