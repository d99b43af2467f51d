use fixedbitset::FixedBitSet;

use super::tree::{MergeTree, TreeKind};
use crate::graph::Graph;
use crate::par;

pub const DEFAULT_BUDGET: usize = 4096;

#[derive(Clone)]
struct Part {
    members: FixedBitSet,
    union: FixedBitSet,
    common: FixedBitSet,
    rep: usize,
}

impl Part {
    fn impure_with(&self, other: &Part) -> bool {
        !other.members.is_subset(&self.common) && !other.members.is_disjoint(&self.union)
    }

    fn merged(&self, other: &Part) -> Part {
        let mut members = self.members.clone();
        members.union_with(&other.members);
        let mut union = self.union.clone();
        union.union_with(&other.union);
        let mut common = self.common.clone();
        common.intersect_with(&other.common);
        Part { members, union, common, rep: self.rep.min(other.rep) }
    }
}

/// Greedy contraction: at every step merge the pair whose merge keeps the
/// largest red degree smallest. `budget` caps the pair evaluations per step;
/// beyond it each part is only paired with its nearest neighbours.
pub fn heuristic_sequence(g: &Graph, budget: usize) -> MergeTree {
    let n = g.n();
    let mut parts: Vec<Option<Part>> = (0..n)
        .map(|v| {
            let mut members = FixedBitSet::with_capacity(n);
            members.insert(v);
            let nb = g.neighbors(v).clone();
            Some(Part { members, union: nb.clone(), common: nb, rep: v })
        })
        .collect();
    let mut red: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
    let mut merges = Vec::with_capacity(n.saturating_sub(1));

    for _ in 1..n {
        let live: Vec<usize> = (0..n).filter(|&i| parts[i].is_some()).collect();
        let pairs = candidate_pairs(&parts, &live, budget.max(1));
        let deg: Vec<usize> = red.iter().map(|r| r.count_ones(..)).collect();
        let scored = par::map(&pairs, |&(a, b)| {
            let pa = parts[a].as_ref().unwrap();
            let pb = parts[b].as_ref().unwrap();
            let m = pa.merged(pb);
            let mut red_m = 0;
            let mut worst = 0;
            for &z in &live {
                if z == a || z == b {
                    continue;
                }
                let hit = m.impure_with(parts[z].as_ref().unwrap());
                red_m += hit as usize;
                let deg = deg[z] - red[z].contains(a) as usize
                    - red[z].contains(b) as usize
                    + hit as usize;
                worst = worst.max(deg);
            }
            (worst.max(red_m), red_m, a, b)
        });
        let &(_, _, a, b) = scored.iter().min().expect("at least one pair");
        let m = parts[a].as_ref().unwrap().merged(parts[b].as_ref().unwrap());
        // the slot whose label survives keeps the merged part
        let (keep, drop) = if m.rep == parts[a].as_ref().unwrap().rep { (a, b) } else { (b, a) };
        merges.push((parts[keep].as_ref().unwrap().rep, parts[drop].as_ref().unwrap().rep));
        parts[drop] = None;
        parts[keep] = Some(m);
        for z in 0..n {
            red[z].set(drop, false);
            red[z].set(keep, false);
        }
        red[drop].clear();
        red[keep].clear();
        let pk = parts[keep].as_ref().unwrap();
        for &z in &live {
            if z == keep || z == drop {
                continue;
            }
            if pk.impure_with(parts[z].as_ref().unwrap()) {
                red[keep].insert(z);
                red[z].insert(keep);
            }
        }
    }
    MergeTree::from_contractions(n, TreeKind::General, &merges).expect("greedy merges are valid")
}

fn candidate_pairs(parts: &[Option<Part>], live: &[usize], budget: usize) -> Vec<(usize, usize)> {
    let p = live.len();
    if p * (p - 1) / 2 <= budget {
        let mut out = Vec::with_capacity(p * (p - 1) / 2);
        for (i, &a) in live.iter().enumerate() {
            for &b in &live[i + 1..] {
                out.push((a, b));
            }
        }
        return out;
    }
    let per = (budget / p).max(1);
    let mut out: Vec<(usize, usize)> = par::map(live, |&a| {
        let pa = parts[a].as_ref().unwrap();
        let mut dist: Vec<(usize, usize)> = live
            .iter()
            .filter(|&&b| b != a)
            .map(|&b| {
                let pb = parts[b].as_ref().unwrap();
                let mut diff = pa.union.clone();
                diff.symmetric_difference_with(&pb.union);
                diff.difference_with(&pa.members);
                diff.difference_with(&pb.members);
                (diff.count_ones(..), b)
            })
            .collect();
        dist.sort_unstable();
        dist.truncate(per);
        dist.into_iter().map(|(_, b)| (a.min(b), a.max(b))).collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::verify::verify_width;

    #[test]
    fn cographs_get_width_zero() {
        for g in [Graph::complete(5), Graph::new(6)] {
            let t = heuristic_sequence(&g, DEFAULT_BUDGET);
            assert_eq!(verify_width(&g, &t).unwrap().width, 0);
        }
    }
}
