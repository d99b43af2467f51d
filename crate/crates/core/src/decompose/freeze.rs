use crate::contraction::MergeTree;
use crate::error::{Error, Result};
use crate::graph::{Graph, Side, VertexSet};
use crate::ladder::quasi_ladder_at_least_in;
use crate::par;

/// Result of replaying a convex sequence with the freezing rule.
pub(crate) struct Freezing {
    /// `(node, time)` in freezing order.
    pub frozen: Vec<(usize, usize)>,
    /// `counts[t - 1]` = (|P^L_t|, |P^R_t|).
    pub counts: Vec<(usize, usize)>,
    /// Largest number of same-side parts freezing at one time.
    pub max_per_step: usize,
}

/// Whether `G[a, b]` (oriented so the left set supplies the x's) has a
/// quasi-ladder of order `k`.
pub(crate) fn index_at_least(
    g: &Graph,
    left: &VertexSet,
    a: &VertexSet,
    b: &VertexSet,
    k: usize,
) -> bool {
    let a_left = a.is_subset(left) && !a.is_clear();
    let (x, y) = if a_left { (a, b) } else { (b, a) };
    quasi_ladder_at_least_in(g, x, y, k).is_some()
}

/// A part freezes once no opposite part forms a pair of index `k` with it.
/// Each unfrozen part keeps its blocking set; when a part splits only its
/// children are re-queried.
pub(crate) fn freeze(
    g: &Graph,
    left: &VertexSet,
    tree: &MergeTree,
    sets: &[VertexSet],
    side: &[Side],
    k: usize,
    d: usize,
) -> Result<Freezing> {
    let nodes = tree.node_count();
    let mut blocking: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    let mut blocked_by: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    let mut dead = vec![false; nodes];
    let mut frozen = Vec::new();
    let mut max_per_step = 0;
    let query = |a: usize, b: usize| index_at_least(g, left, &sets[a], &sets[b], k);

    let roots = tree.roots().to_vec();
    let mut counts = Vec::with_capacity(tree.num_partitions());
    let mut cur = (0usize, 0usize);
    for &r in &roots {
        match side[r] {
            Side::Left => cur.0 += 1,
            Side::Right => cur.1 += 1,
        }
    }
    counts.push(cur);

    let pairs: Vec<(usize, usize)> = roots
        .iter()
        .flat_map(|&a| roots.iter().filter(move |&&b| side[b] != side[a]).map(move |&b| (a, b)))
        .collect();
    let hits = par::map(&pairs, |&(a, b)| query(a, b));
    for (&(a, b), hit) in pairs.iter().zip(hits) {
        if hit {
            blocking[a].push(b);
            blocked_by[b].push(a);
        }
    }
    let mut newly: Vec<usize> = roots.iter().copied().filter(|&r| blocking[r].is_empty()).collect();
    settle(1, &mut newly, &mut dead, &mut frozen, side, d, &mut max_per_step)?;

    for step in 1..=tree.num_splits() {
        let time = step + 1;
        let x = tree.node_at_time(step);
        let (c1, c2) = tree.children(x).unwrap();
        match side[x] {
            Side::Left => cur.0 += 1,
            Side::Right => cur.1 += 1,
        }
        counts.push(cur);

        let mut queries: Vec<(usize, usize)> = Vec::new();
        if dead[x] {
            dead[c1] = true;
            dead[c2] = true;
        } else {
            for &b in &blocking[x] {
                queries.push((c1, b));
                queries.push((c2, b));
            }
        }
        let watchers = std::mem::take(&mut blocked_by[x]);
        for &a in &watchers {
            queries.push((a, c1));
            queries.push((a, c2));
        }
        let hits = par::map(&queries, |&(a, b)| query(a, b));

        if !dead[x] {
            for &b in &blocking[x] {
                blocked_by[b].retain(|&w| w != x);
            }
            blocking[x].clear();
        }
        for &a in &watchers {
            blocking[a].retain(|&w| w != x);
        }
        for (&(a, b), hit) in queries.iter().zip(hits) {
            if hit {
                blocking[a].push(b);
                blocked_by[b].push(a);
            }
        }
        let mut newly = Vec::new();
        if !dead[x] {
            newly.extend([c1, c2].into_iter().filter(|&c| blocking[c].is_empty()));
        }
        newly.extend(watchers.iter().copied().filter(|&a| blocking[a].is_empty()));
        settle(time, &mut newly, &mut dead, &mut frozen, side, d, &mut max_per_step)?;
    }

    for v in 0..tree.n() {
        if !dead[v] {
            return Err(Error::certified(
                "frozen-division",
                format!("vertex {v} never lies in a frozen part"),
            ));
        }
    }
    Ok(Freezing { frozen, counts, max_per_step })
}

#[allow(clippy::too_many_arguments)]
fn settle(
    time: usize,
    newly: &mut Vec<usize>,
    dead: &mut [bool],
    frozen: &mut Vec<(usize, usize)>,
    side: &[Side],
    d: usize,
    max_per_step: &mut usize,
) -> Result<()> {
    newly.sort_unstable();
    newly.dedup();
    let mut per_side = [0usize; 2];
    for &a in newly.iter() {
        dead[a] = true;
        frozen.push((a, time));
        per_side[side[a] as usize] += 1;
    }
    let worst = per_side[0].max(per_side[1]);
    *max_per_step = (*max_per_step).max(worst);
    if worst > d {
        return Err(Error::certified(
            "freezing-tiny",
            format!("{worst} parts of one side froze at time {time}, more than d = {d}"),
        ));
    }
    Ok(())
}
