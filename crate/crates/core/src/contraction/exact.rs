use std::collections::HashSet;

use super::tree::{MergeTree, TreeKind};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const EXACT_LIMIT: usize = 9;

/// Twin-width by exhaustive search over partitions, for at most nine vertices.
/// Returns the width and a sequence attaining it.
pub fn exact_twinwidth(g: &Graph) -> Result<(usize, MergeTree)> {
    let n = g.n();
    if n > EXACT_LIMIT {
        return Err(Error::Refused(format!("exact twin-width needs n <= {EXACT_LIMIT}, got {n}")));
    }
    let adj: Vec<u16> = (0..n)
        .map(|v| g.neighbors(v).ones().fold(0u16, |m, w| m | (1 << w)))
        .collect();
    let start: Vec<u16> = (0..n).map(|v| 1u16 << v).collect();
    for d in 0..n.max(1) {
        let mut failed = HashSet::new();
        let mut merges = Vec::new();
        if search(&adj, start.clone(), d, &mut failed, &mut merges) {
            let tree = MergeTree::from_contractions(n, TreeKind::General, &merges)?;
            return Ok((d, tree));
        }
    }
    unreachable!("width n-1 is always attainable")
}

fn impure(adj: &[u16], x: u16, y: u16) -> bool {
    let (mut full, mut empty) = (false, false);
    let mut rest = x;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let hit = adj[v] & y;
        if hit == 0 {
            empty = true;
        } else if hit == y {
            full = true;
        } else {
            return true;
        }
    }
    full && empty
}

fn max_red(adj: &[u16], parts: &[u16]) -> usize {
    (0..parts.len())
        .map(|i| (0..parts.len()).filter(|&j| j != i && impure(adj, parts[i], parts[j])).count())
        .max()
        .unwrap_or(0)
}

fn search(
    adj: &[u16],
    parts: Vec<u16>,
    d: usize,
    failed: &mut HashSet<Vec<u16>>,
    merges: &mut Vec<(usize, usize)>,
) -> bool {
    if parts.len() <= 1 {
        return true;
    }
    if failed.contains(&parts) {
        return false;
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let mut next: Vec<u16> = parts
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i && k != j)
                .map(|(_, &p)| p)
                .collect();
            next.push(parts[i] | parts[j]);
            next.sort_unstable();
            if max_red(adj, &next) > d {
                continue;
            }
            let (u, v) = (parts[i].trailing_zeros() as usize, parts[j].trailing_zeros() as usize);
            merges.push((u.min(v), u.max(v)));
            if search(adj, next, d, failed, merges) {
                return true;
            }
            merges.pop();
        }
    }
    failed.insert(parts);
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::verify::verify_width;

    #[test]
    fn small_known_values() {
        assert_eq!(exact_twinwidth(&Graph::complete(4)).unwrap().0, 0);
        let (w, t) = exact_twinwidth(&Graph::path(4)).unwrap();
        assert_eq!(w, 1);
        assert_eq!(verify_width(&Graph::path(4), &t).unwrap().width, 1);
        assert!(exact_twinwidth(&Graph::new(10)).is_err());
    }
}
