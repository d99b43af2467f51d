//! Instance generators. All randomness comes from an explicit seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::colnum::OrderedGraph;
use crate::contraction::{heuristic_sequence, MergeTree, TreeKind, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random cograph from a random binary cotree. The returned sequence merges
/// modules in the order they were combined, so every part is a module and the
/// width is 0.
pub fn cograph(n: usize, rng: &mut impl Rng) -> (Graph, MergeTree) {
    let mut g = Graph::new(n);
    let mut modules: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut merges = Vec::new();
    while modules.len() > 1 {
        let i = rng.gen_range(0..modules.len());
        let a = modules.swap_remove(i);
        let j = rng.gen_range(0..modules.len());
        let b = modules.swap_remove(j);
        if rng.gen_bool(0.5) {
            for &u in &a {
                for &v in &b {
                    g.add_edge(u, v);
                }
            }
        }
        let (ra, rb) = (a[0].min(b[0]), a[0].max(b[0]));
        merges.push((ra, rb));
        let mut m = a;
        m.extend(b);
        m.sort_unstable();
        modules.push(m);
    }
    let t = MergeTree::from_contractions(n, TreeKind::General, &merges).unwrap();
    (g, t)
}

/// Ladder of order `n`: `x_i = i - 1`, `y_j = n + j - 1`, `x_i ~ y_j` iff `i <= j`.
/// The sequence merges `x`'s and `y`'s alternately from the bottom, then the two sides.
pub fn half_graph(n: usize) -> (BipartiteGraph, MergeTree) {
    let edges: Vec<_> = (0..n).flat_map(|i| (i..n).map(move |j| (i, n + j))).collect();
    let g = BipartiteGraph::from_sides(n, n, edges).unwrap();
    let mut merges = Vec::new();
    for i in 1..n {
        merges.push((0, i));
        merges.push((n, n + i));
    }
    if n > 0 {
        merges.push((0, n));
    }
    let t = MergeTree::from_contractions(2 * n, TreeKind::General, &merges).unwrap();
    (g, t)
}

pub fn grid(w: usize, h: usize) -> (Graph, MergeTree) {
    let id = |x: usize, y: usize| y * w + x;
    let mut g = Graph::new(w * h);
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                g.add_edge(id(x, y), id(x + 1, y));
            }
            if y + 1 < h {
                g.add_edge(id(x, y), id(x, y + 1));
            }
        }
    }
    let t = heuristic_sequence(&g, DEFAULT_BUDGET);
    (g, t)
}

fn valuation(k: usize) -> u32 {
    k.trailing_zeros()
}

/// Power graph on `1..=n` (vertex `i` has id `i - 1`): `i ~ j` iff `|i - j| = 1`
/// or both have the same 2-adic valuation.
pub fn power(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 1..=n {
        for j in i + 1..=n {
            if j - i == 1 || valuation(i) == valuation(j) {
                g.add_edge(i - 1, j - 1);
            }
        }
    }
    g
}

/// Companion of the power graph: a path `1..=n` plus centres `c_0..c_m`,
/// `m = floor(log2 n)`, with `c_i` adjacent to the numbers of valuation `i`.
///
/// Centres get ids `0..=m` and path vertex `k` gets id `m + k`, so that the
/// natural order puts every centre before the path.
pub fn power_companion(n: usize) -> Result<(OrderedGraph, Vec<usize>)> {
    if n == 0 {
        return Err(Error::input("power-companion needs n >= 1"));
    }
    let m = (usize::BITS - 1 - n.leading_zeros()) as usize;
    let total = m + 1 + n;
    let mut g = Graph::new(total);
    let path = |k: usize| m + k;
    for k in 1..n {
        g.add_edge(path(k), path(k + 1));
    }
    for k in 1..=n {
        g.add_edge(valuation(k) as usize, path(k));
    }
    let mut colors = vec![3; total];
    for k in 1..=n {
        colors[path(k)] = k % 3;
    }
    Ok((OrderedGraph::natural(g), colors))
}

/// Random graph with a certified sequence of width at most `d`.
///
/// Runs an uncontraction sequence forwards, splitting a random part at random.
/// Every pair of live parts carries a verdict: complete, anticomplete, or red.
/// Children inherit pure verdicts; red pairs are redrawn, staying red only while
/// both sides have red degree below `d`. Pairs of singletons are always pure.
pub fn random_tww(n: usize, d: usize, rng: &mut impl Rng) -> (Graph, MergeTree) {
    #[derive(Clone, Copy, PartialEq)]
    enum V {
        Plus,
        Minus,
        Red,
    }
    let mut parts: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut live: Vec<usize> = if n > 0 { vec![0] } else { vec![] };
    let mut verdict: std::collections::HashMap<(usize, usize), V> = Default::default();
    let mut red_deg: Vec<usize> = vec![0];
    let mut splits = Vec::new();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));

    loop {
        let splittable: Vec<usize> = live.iter().copied().filter(|&x| parts[x].len() > 1).collect();
        let Some(&x) = splittable.choose(rng) else { break };
        let mut members = parts[x].clone();
        members.shuffle(rng);
        let cut = rng.gen_range(1..members.len());
        let mut a = members[..cut].to_vec();
        let mut b = members[cut..].to_vec();
        a.sort_unstable();
        b.sort_unstable();
        splits.push((a[0].min(b[0]), a[0].max(b[0])));
        let ca = parts.len();
        let cb = ca + 1;
        parts.push(a);
        parts.push(b);
        red_deg.push(0);
        red_deg.push(0);
        live.retain(|&y| y != x);

        let draw = |rng: &mut _, allow_red: bool| -> V {
            let r: f64 = Rng::gen(rng);
            if allow_red && r < 0.4 {
                V::Red
            } else if r < 0.7 {
                V::Plus
            } else {
                V::Minus
            }
        };
        for &z in &live {
            let old = verdict.remove(&key(x, z)).unwrap();
            if old == V::Red {
                red_deg[z] -= 1;
            }
            for c in [ca, cb] {
                let v = if old == V::Red {
                    let singletons = parts[c].len() == 1 && parts[z].len() == 1;
                    let room = red_deg[c] < d && red_deg[z] < d;
                    draw(rng, !singletons && room)
                } else {
                    old
                };
                if v == V::Red {
                    red_deg[c] += 1;
                    red_deg[z] += 1;
                }
                verdict.insert(key(c, z), v);
            }
        }
        let singletons = parts[ca].len() == 1 && parts[cb].len() == 1;
        let room = red_deg[ca] < d && red_deg[cb] < d;
        let v = draw(rng, !singletons && room);
        if v == V::Red {
            red_deg[ca] += 1;
            red_deg[cb] += 1;
        }
        verdict.insert(key(ca, cb), v);
        live.push(ca);
        live.push(cb);
    }

    let mut g = Graph::new(n);
    for (&(a, b), &v) in &verdict {
        debug_assert!(v != V::Red);
        if v == V::Plus {
            g.add_edge(parts[a][0], parts[b][0]);
        }
    }
    splits.reverse();
    let t = MergeTree::from_contractions(n, TreeKind::General, &splits).unwrap();
    (g, t)
}
