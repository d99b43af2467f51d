//! Quasi-ladder threshold search on word-packed vertex sets.

use std::hash::Hash;

use rustc_hash::FxHashMap;

use crate::graph::{Graph, VertexSet};

pub(super) trait Words: Clone + Eq + Hash + Ord {
    fn zeros(words: usize) -> Self;
    fn w(&self) -> &[u64];
    fn w_mut(&mut self) -> &mut [u64];
}

impl<const W: usize> Words for [u64; W] {
    fn zeros(_: usize) -> Self {
        [0; W]
    }
    fn w(&self) -> &[u64] {
        self
    }
    fn w_mut(&mut self) -> &mut [u64] {
        self
    }
}

impl Words for Vec<u64> {
    fn zeros(words: usize) -> Self {
        vec![0; words]
    }
    fn w(&self) -> &[u64] {
        self
    }
    fn w_mut(&mut self) -> &mut [u64] {
        self
    }
}

fn pack<B: Words>(set: &VertexSet, words: usize) -> B {
    let mut b = B::zeros(words);
    for v in set.ones() {
        b.w_mut()[v / 64] |= 1 << (v % 64);
    }
    b
}

fn and<B: Words>(a: &B, b: &B) -> B {
    let mut out = a.clone();
    out.w_mut().iter_mut().zip(b.w()).for_each(|(x, y)| *x &= y);
    out
}

fn and_not<B: Words>(a: &B, b: &B) -> B {
    let mut out = a.clone();
    out.w_mut().iter_mut().zip(b.w()).for_each(|(x, y)| *x &= !y);
    out
}

fn count<B: Words>(a: &B) -> usize {
    a.w().iter().map(|x| x.count_ones() as usize).sum()
}

fn count_and<B: Words>(a: &B, b: &B) -> usize {
    a.w().iter().zip(b.w()).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

fn subset<B: Words>(a: &B, b: &B) -> bool {
    a.w().iter().zip(b.w()).all(|(x, y)| x & !y == 0)
}

fn each_one<B: Words>(a: &B, mut f: impl FnMut(usize)) {
    for (i, &word) in a.w().iter().enumerate() {
        let mut rest = word;
        while rest != 0 {
            f(i * 64 + rest.trailing_zeros() as usize);
            rest &= rest - 1;
        }
    }
}

type Traces<B> = Vec<(usize, B)>;

pub(super) trait Engine {
    fn at_least(&mut self, k: usize) -> Option<Vec<(usize, usize)>>;
}

struct Scratch<B> {
    tx: Vec<(B, usize)>,
    ty: Vec<(B, usize)>,
    xd: Vec<usize>,
    yd: Vec<usize>,
    cx: Vec<usize>,
    cy: Vec<usize>,
    nx: Vec<usize>,
    ny: Vec<usize>,
}

impl<B> Default for Scratch<B> {
    fn default() -> Self {
        Scratch {
            tx: Vec::new(),
            ty: Vec::new(),
            xd: Vec::new(),
            yd: Vec::new(),
            cx: Vec::new(),
            cy: Vec::new(),
            nx: Vec::new(),
            ny: Vec::new(),
        }
    }
}

struct Core<B: Words> {
    adj: Vec<B>,
    start: (B, B),
    failed: FxHashMap<(B, B), usize>,
    s: Scratch<B>,
}

pub(super) fn engine(g: &Graph, a: &VertexSet, b: &VertexSet) -> Box<dyn Engine> {
    fn make<B: Words + 'static>(g: &Graph, a: &VertexSet, b: &VertexSet) -> Box<dyn Engine> {
        let words = g.n().div_ceil(64).max(1);
        let adj = g.adjacency().iter().map(|s| pack(s, words)).collect();
        let start = (pack(a, words), pack(b, words));
        Box::new(Core::<B> { adj, start, failed: FxHashMap::default(), s: Scratch::default() })
    }
    match g.n().div_ceil(64) {
        0 | 1 => make::<[u64; 1]>(g, a, b),
        2 => make::<[u64; 2]>(g, a, b),
        3 => make::<[u64; 3]>(g, a, b),
        4 => make::<[u64; 4]>(g, a, b),
        5..=8 => make::<[u64; 8]>(g, a, b),
        _ => make::<Vec<u64>>(g, a, b),
    }
}

impl<B: Words> Engine for Core<B> {
    fn at_least(&mut self, k: usize) -> Option<Vec<(usize, usize)>> {
        let mut path = Vec::with_capacity(k);
        let (xs, ys) = self.start.clone();
        self.extend(xs, ys, k, &mut path).then_some(path)
    }
}

impl<B: Words> Core<B> {
    /// `xs`: x-candidates adjacent to every chosen y; `ys`: y-candidates
    /// non-adjacent to every chosen x.
    fn extend(&mut self, xs: B, ys: B, need: usize, path: &mut Vec<(usize, usize)>) -> bool {
        if need == 0 {
            return true;
        }
        // twins only make the profile easier to fit, so raw degrees give a cheap first cut
        if self.raw_profile_fails(&xs, &ys, need) {
            return false;
        }
        let key = self.reduce(xs, ys);
        if self.failed.get(&key).is_some_and(|&f| f <= need) {
            return false;
        }
        let s = &mut self.s;
        s.xd.clear();
        s.xd.extend(s.tx.iter().map(|t| count(&t.0)));
        s.yd.clear();
        s.yd.extend(s.ty.iter().map(|t| count(&t.0)));
        if profile_fails(s, need) {
            self.fail(key, need);
            return false;
        }
        // x keeps the y-candidates it misses; y keeps the x-candidates it sees
        let xo = maximal(self.s.tx.iter().map(|(seen, x)| (*x, and_not(&key.1, seen))));
        let yo = maximal(self.s.ty.iter().map(|(seen, y)| (*y, seen.clone())));
        for (x, ys) in &xo {
            for (y, xs) in &yo {
                path.push((*x, *y));
                if self.extend(xs.clone(), ys.clone(), need - 1, path) {
                    return true;
                }
                path.pop();
            }
        }
        self.fail(key, need);
        false
    }

    fn fail(&mut self, key: (B, B), need: usize) {
        let e = self.failed.entry(key).or_insert(need);
        *e = (*e).min(need);
    }

    fn raw_profile_fails(&mut self, xs: &B, ys: &B, need: usize) -> bool {
        let s = &mut self.s;
        s.xd.clear();
        each_one(xs, |x| s.xd.push(count_and(ys, &self.adj[x])));
        s.yd.clear();
        each_one(ys, |y| s.yd.push(count_and(xs, &self.adj[y])));
        profile_fails(s, need)
    }

    /// Keeps one candidate per twin class on each side until nothing merges;
    /// afterwards `tx` and `ty` hold each survivor with the part of the other
    /// side it sees.
    fn reduce(&mut self, mut xs: B, mut ys: B) -> (B, B) {
        let s = &mut self.s;
        if representatives(&self.adj, &xs, &ys, &mut s.tx) {
            xs = collect(&xs, &s.tx);
        }
        // each pass is computed against the other side's latest set, so the
        // first pass that merges nothing leaves both lists current
        loop {
            if !representatives(&self.adj, &ys, &xs, &mut s.ty) {
                return (xs, ys);
            }
            ys = collect(&ys, &s.ty);
            if !representatives(&self.adj, &xs, &ys, &mut s.tx) {
                return (xs, ys);
            }
            xs = collect(&xs, &s.tx);
        }
    }
}

/// Returns whether any twins were merged.
fn representatives<B: Words>(adj: &[B], cands: &B, other: &B, out: &mut Vec<(B, usize)>) -> bool {
    out.clear();
    each_one(cands, |v| out.push((and(other, &adj[v]), v)));
    out.sort_unstable();
    let before = out.len();
    out.dedup_by(|later, first| later.0 == first.0);
    out.len() != before
}

fn collect<B: Words>(like: &B, t: &[(B, usize)]) -> B {
    let mut out = B::zeros(like.w().len());
    for (_, v) in t {
        out.w_mut()[v / 64] |= 1 << (v % 64);
    }
    out
}

/// Drops every outcome contained in another one.
fn maximal<B: Words>(outs: impl Iterator<Item = (usize, B)>) -> Traces<B> {
    let mut keyed: Vec<(std::cmp::Reverse<usize>, usize, B)> =
        outs.map(|(v, t)| (std::cmp::Reverse(count(&t)), v, t)).collect();
    keyed.sort_unstable_by_key(|e| (e.0, e.1));
    let mut kept: Traces<B> = Vec::new();
    for (_, v, t) in keyed {
        if !kept.iter().any(|(_, k)| subset(&t, k)) {
            kept.push((v, t));
        }
    }
    kept
}

/// `out[t]` is the number of values that are at least `t`, with values capped at `cap`.
fn tail_counts(vals: impl Iterator<Item = usize>, cap: usize, out: &mut Vec<usize>) {
    out.clear();
    out.resize(cap + 2, 0);
    for v in vals {
        out[v.min(cap)] += 1;
    }
    for t in (0..=cap).rev() {
        out[t] += out[t + 1];
    }
}

/// Every other x together with every other y of a quasi-ladder of order `m` is
/// a ladder on pairwise distinct twin classes; its degree profile has to fit
/// the degrees in `xd` (out of `yd.len()`) and `yd` (out of `xd.len()`).
fn profile_fails<B>(s: &mut Scratch<B>, m: usize) -> bool {
    let (nx, ny) = (s.xd.len(), s.yd.len());
    // no wish exceeds `cap`, so larger values need not be told apart
    let cap = m.div_ceil(2);
    tail_counts(s.xd.iter().copied(), cap, &mut s.cx);
    tail_counts(s.xd.iter().map(|d| ny - d), cap, &mut s.nx);
    tail_counts(s.yd.iter().copied(), cap, &mut s.cy);
    tail_counts(s.yd.iter().map(|d| nx - d), cap, &mut s.ny);
    // the i-th largest wish is covered by the i-th largest value
    let fits = |c: &[usize], i: usize, w: usize| c[w] > i;
    let (cx, nxs, cy, nys) = (&s.cx, &s.nx, &s.cy, &s.ny);
    // X_a sees Y_b iff b < a + s
    [(m.div_ceil(2), m / 2, 0), (m / 2, m.div_ceil(2), 1)].into_iter().any(|(p, q, s)| {
        let dx = |a: usize| q.min(a + s - 1);
        let dy = |b: usize| p - p.min(b.saturating_sub(s));
        p > nx
            || q > ny
            || !((1..=p).rev().enumerate().all(|(i, a)| fits(cx, i, dx(a)))
                && (1..=p).enumerate().all(|(i, a)| fits(nxs, i, q - dx(a)))
                && (1..=q).enumerate().all(|(i, b)| fits(cy, i, dy(b)))
                && (1..=q).rev().enumerate().all(|(i, b)| fits(nys, i, p - dy(b))))
    })
}
