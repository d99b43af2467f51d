use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{set_from, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TreeKind {
    /// One root; `P_1 = {V}`.
    General,
    /// Two roots, one per side; `P_1 = {L, R}`.
    Convex,
}

/// An uncontraction sequence stored as a timestamped binary merge forest.
///
/// Nodes `0..n` are the leaves (node `v` is vertex `v`). The internal node
/// split at time `t` has id `n + t - 1`, so two trees describing the same
/// sequence compare equal. Splitting the node with time `t` turns `P_t` into
/// `P_{t+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeTree {
    kind: TreeKind,
    n: usize,
    children: Vec<(usize, usize)>,
    parent: Vec<Option<usize>>,
    roots: Vec<usize>,
}

impl MergeTree {
    /// `children[t - 1]` holds the two children of the node split at time `t`.
    pub fn from_parts(
        kind: TreeKind,
        n: usize,
        children: Vec<(usize, usize)>,
        roots: Vec<usize>,
    ) -> Result<Self> {
        let m = children.len();
        let total = n + m;
        if roots.len() + m != n && n > 0 {
            return Err(Error::structural(
                None,
                format!("{} roots and {m} splits cannot cover {n} leaves", roots.len()),
            ));
        }
        match kind {
            TreeKind::General if n > 0 && roots.len() != 1 => {
                return Err(Error::structural(None, "a general tree has exactly one root"));
            }
            TreeKind::Convex if n > 0 && !(1..=2).contains(&roots.len()) => {
                return Err(Error::structural(None, "a convex tree has one root per nonempty side"));
            }
            _ => {}
        }
        let mut parent = vec![None; total];
        for (i, &(a, b)) in children.iter().enumerate() {
            let x = n + i;
            for c in [a, b] {
                if c >= total || c == x {
                    return Err(Error::structural(Some(i + 1), format!("child {c} out of range")));
                }
                if parent[c].is_some() {
                    return Err(Error::structural(Some(i + 1), format!("node {c} has two parents")));
                }
                if c >= n && c <= x {
                    return Err(Error::structural(
                        Some(i + 1),
                        "a child is split no later than its parent",
                    ));
                }
                parent[c] = Some(x);
            }
            if a == b {
                return Err(Error::structural(Some(i + 1), "node with a repeated child"));
            }
        }
        for &r in &roots {
            if r >= total || parent[r].is_some() {
                return Err(Error::structural(None, format!("root {r} is not parentless")));
            }
        }
        let orphans = (0..total).filter(|&x| parent[x].is_none()).count();
        if orphans != roots.len() {
            return Err(Error::structural(None, "some node is neither a root nor a child"));
        }
        Ok(MergeTree { kind, n, children, parent, roots })
    }

    /// Reads a contraction order: each `(u, v)` merges the current part of `v`
    /// into the current part of `u`, and `v` stops being a part label.
    pub fn from_contractions(n: usize, kind: TreeKind, merges: &[(usize, usize)]) -> Result<Self> {
        let m = merges.len();
        let mut node_of: Vec<Option<usize>> = (0..n).map(Some).collect();
        let mut created = Vec::with_capacity(m);
        for (i, &(u, v)) in merges.iter().enumerate() {
            if u >= n || v >= n || u == v {
                return Err(Error::structural(Some(i + 1), format!("bad merge ({u},{v})")));
            }
            let (Some(a), Some(b)) = (node_of[u], node_of[v]) else {
                return Err(Error::structural(
                    Some(i + 1),
                    format!("merge ({u},{v}) names a vertex that was already merged away"),
                ));
            };
            created.push((a, b));
            node_of[u] = Some(n + i);
            node_of[v] = None;
        }
        // The i-th merge is undone at time m - i.
        let relabel = |x: usize| if x < n { x } else { n + (m - 1 - (x - n)) };
        let mut children = vec![(0, 0); m];
        for (i, &(a, b)) in created.iter().enumerate() {
            children[m - 1 - i] = (relabel(a), relabel(b));
        }
        let roots: Vec<usize> = node_of.iter().flatten().map(|&x| relabel(x)).collect();
        MergeTree::from_parts(kind, n, children, roots)
    }

    /// The contraction order; inverse of [`MergeTree::from_contractions`].
    pub fn to_contractions(&self) -> Vec<(usize, usize)> {
        (0..self.children.len())
            .rev()
            .map(|i| {
                let (a, b) = self.children[i];
                (self.label(a), self.label(b))
            })
            .collect()
    }

    /// Representative vertex of a node: follow first children down to a leaf.
    pub fn label(&self, mut x: usize) -> usize {
        while x >= self.n {
            x = self.children[x - self.n].0;
        }
        x
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.n + self.children.len()
    }

    pub fn num_splits(&self) -> usize {
        self.children.len()
    }

    /// Number of partitions `P_1, …` in the sequence.
    pub fn num_partitions(&self) -> usize {
        if self.n == 0 {
            0
        } else {
            self.children.len() + 1
        }
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn is_leaf(&self, x: usize) -> bool {
        x < self.n
    }

    pub fn children(&self, x: usize) -> Option<(usize, usize)> {
        (x >= self.n).then(|| self.children[x - self.n])
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        self.parent[x]
    }

    pub fn split_time(&self, x: usize) -> Option<usize> {
        (x >= self.n).then(|| x - self.n + 1)
    }

    pub fn node_at_time(&self, t: usize) -> usize {
        self.n + t - 1
    }

    /// First time the node is a part.
    pub fn birth(&self, x: usize) -> usize {
        match self.parent[x] {
            None => 1,
            Some(p) => p - self.n + 2,
        }
    }

    /// First time the node is no longer a part (`usize::MAX` for leaves).
    pub fn death(&self, x: usize) -> usize {
        self.split_time(x).map_or(usize::MAX, |t| t + 1)
    }

    pub fn is_live_at(&self, x: usize, t: usize) -> bool {
        self.birth(x) <= t && t < self.death(x)
    }

    /// The part of `P_t` containing node `x` (which must be born by then or be a descendant).
    pub fn ancestor_at(&self, mut x: usize, t: usize) -> usize {
        while self.birth(x) > t {
            x = self.parent[x].expect("roots are born at time 1");
        }
        x
    }

    pub fn is_ancestor(&self, anc: usize, mut x: usize) -> bool {
        loop {
            if x == anc {
                return true;
            }
            match self.parent[x] {
                Some(p) => x = p,
                None => return false,
            }
        }
    }

    /// Vertex set of every node, indexed by node id.
    pub fn node_sets(&self) -> Vec<VertexSet> {
        let mut sets: Vec<VertexSet> = (0..self.n).map(|v| set_from(self.n, [v])).collect();
        sets.resize(self.node_count(), VertexSet::with_capacity(self.n));
        for i in (0..self.children.len()).rev() {
            let (a, b) = self.children[i];
            let mut s = sets[a].clone();
            s.union_with(&sets[b]);
            sets[self.n + i] = s;
        }
        sets
    }

    pub fn leaves_of(&self, x: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            match self.children(y) {
                None => out.push(y),
                Some((a, b)) => {
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
        out
    }

    /// Nodes forming `P_t`.
    pub fn live_at(&self, t: usize) -> Vec<usize> {
        (0..self.node_count()).filter(|&x| self.is_live_at(x, t)).collect()
    }

    pub fn partition_at(&self, t: usize) -> Vec<VertexSet> {
        let sets = self.node_sets();
        self.live_at(t).into_iter().map(|x| sets[x].clone()).collect()
    }

    /// Restriction to `keep`: leaves outside are pruned, unary nodes contracted,
    /// and times renumbered in their original order. Leaves are relabelled to
    /// their rank within `keep`.
    pub fn restrict(&self, keep: &VertexSet) -> Result<MergeTree> {
        let kept: Vec<usize> = keep.ones().filter(|&v| v < self.n).collect();
        if kept.is_empty() {
            return Err(Error::input("restriction to an empty vertex set"));
        }
        let mut new_id = vec![usize::MAX; self.node_count()];
        for (i, &v) in kept.iter().enumerate() {
            new_id[v] = i;
        }
        // image[x] = node of the restricted tree standing for x, if any.
        let mut image: Vec<Option<usize>> = (0..self.node_count())
            .map(|x| (x < self.n && new_id[x] != usize::MAX).then(|| new_id[x]))
            .collect();
        let mut builder = TreeBuilder::new(kept.len());
        for i in (0..self.children.len()).rev() {
            let (a, b) = self.children[i];
            image[self.n + i] = match (image[a], image[b]) {
                (Some(x), Some(y)) => Some(builder.join(x, y, (i + 1, 0))),
                (Some(x), None) | (None, Some(x)) => Some(x),
                (None, None) => None,
            };
        }
        let roots: Vec<usize> = self.roots.iter().filter_map(|&r| image[r]).collect();
        builder.finish(self.kind, roots)
    }

    /// Convex tree regarded as a general one: a new first split separates the two roots.
    pub fn with_common_root(&self) -> Result<MergeTree> {
        if self.roots.len() <= 1 {
            let mut t = self.clone();
            t.kind = TreeKind::General;
            return Ok(t);
        }
        let mut b = TreeBuilder::new(self.n);
        let mut image: Vec<usize> = (0..self.n).collect();
        image.resize(self.node_count(), 0);
        for i in (0..self.children.len()).rev() {
            let (a, c) = self.children[i];
            image[self.n + i] = b.join(image[a], image[c], (i + 2, 0));
        }
        let root = b.join(image[self.roots[0]], image[self.roots[1]], (1, 0));
        b.finish(TreeKind::General, vec![root])
    }
}

/// Assembles a tree bottom-up; split times are assigned by sorting the keys.
pub struct TreeBuilder {
    n: usize,
    joins: Vec<(usize, usize)>,
    keys: Vec<(usize, usize)>,
}

impl TreeBuilder {
    pub fn new(n: usize) -> Self {
        TreeBuilder { n, joins: Vec::new(), keys: Vec::new() }
    }

    pub fn join(&mut self, a: usize, b: usize, key: (usize, usize)) -> usize {
        self.joins.push((a, b));
        self.keys.push(key);
        self.n + self.joins.len() - 1
    }

    /// Smaller keys split earlier. Ties keep creation order reversed, so a
    /// parent built after its children still splits first.
    pub fn finish(self, kind: TreeKind, roots: Vec<usize>) -> Result<MergeTree> {
        let n = self.n;
        let m = self.joins.len();
        let mut idx: Vec<usize> = (0..m).collect();
        idx.sort_by(|&i, &j| self.keys[i].cmp(&self.keys[j]).then(j.cmp(&i)));
        let mut final_id = vec![0; m];
        for (t, &i) in idx.iter().enumerate() {
            final_id[i] = n + t;
        }
        let map = |x: usize| if x < n { x } else { final_id[x - n] };
        let mut children = vec![(0, 0); m];
        for (i, &(a, b)) in self.joins.iter().enumerate() {
            children[final_id[i] - n] = (map(a), map(b));
        }
        let roots = roots.into_iter().map(map).collect();
        MergeTree::from_parts(kind, n, children, roots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3_tree() -> MergeTree {
        // V -> {a,c},{b} -> singletons
        let mut b = TreeBuilder::new(3);
        let ac = b.join(0, 2, (2, 0));
        let root = b.join(ac, 1, (1, 0));
        b.finish(TreeKind::General, vec![root]).unwrap()
    }

    #[test]
    fn replay_yields_refining_partitions() {
        let t = p3_tree();
        assert_eq!(t.num_partitions(), 3);
        let sizes: Vec<usize> = (1..=3).map(|i| t.partition_at(i).len()).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn contraction_round_trip() {
        let t = p3_tree();
        let merges = t.to_contractions();
        assert_eq!(merges, vec![(0, 2), (0, 1)]);
        assert_eq!(MergeTree::from_contractions(3, TreeKind::General, &merges).unwrap(), t);
    }

    #[test]
    fn rejects_double_merge() {
        assert!(MergeTree::from_contractions(3, TreeKind::General, &[(0, 1), (2, 1)]).is_err());
        assert!(MergeTree::from_contractions(3, TreeKind::General, &[(0, 1)]).is_err());
    }

    #[test]
    fn restrict_prunes_and_renumbers() {
        let t = p3_tree();
        let r = t.restrict(&set_from(3, [0, 1])).unwrap();
        assert_eq!(r.n(), 2);
        assert_eq!(r.num_splits(), 1);
        let single = t.restrict(&set_from(3, [2])).unwrap();
        assert_eq!(single.n(), 1);
        assert_eq!(single.roots(), &[0]);
        assert_eq!(t.restrict(&set_from(3, 0..3)).unwrap(), t);
        assert!(t.restrict(&set_from(3, [])).is_err());
    }
}
