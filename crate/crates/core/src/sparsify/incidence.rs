use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle;

/// Domain vertices `0..domain`, then one vertex per class of each stored relation;
/// `tags[c]` is the relation of class vertex `domain + c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGraph {
    pub graph: Graph,
    pub domain: usize,
    pub relations: usize,
    pub tags: Vec<usize>,
}

/// Plain form for files: edges as pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceRecord {
    pub domain: usize,
    pub relations: usize,
    pub tags: Vec<usize>,
}

impl IncidenceGraph {
    pub fn record(&self) -> IncidenceRecord {
        IncidenceRecord { domain: self.domain, relations: self.relations, tags: self.tags.clone() }
    }

    pub fn from_parts(graph: Graph, rec: &IncidenceRecord) -> Result<IncidenceGraph> {
        if graph.n() != rec.domain + rec.tags.len() || rec.tags.iter().any(|&t| t >= rec.relations) {
            return Err(Error::structural(None, "incidence graph does not match its tags"));
        }
        Ok(IncidenceGraph { graph, domain: rec.domain, relations: rec.relations, tags: rec.tags.clone() })
    }

    /// Degree and independence argument for `K_{t'+1,t'+1}`-freeness: every domain
    /// vertex has degree `t'` and both sides are independent.
    pub fn structural_ok(&self) -> bool {
        let g = &self.graph;
        (0..self.domain).all(|v| g.degree(v) == self.relations && g.neighbors(v).ones().all(|w| w >= self.domain))
            && (self.domain..g.n()).all(|c| g.neighbors(c).ones().all(|w| w < self.domain))
    }
}

/// One class vertex per class per relation, joined to the members of its class.
/// Relations are class labels per domain vertex.
pub fn equiv_to_sparse(n: usize, relations: &[Vec<usize>]) -> IncidenceGraph {
    let mut edges = Vec::new();
    let mut tags = Vec::new();
    for (r, labels) in relations.iter().enumerate() {
        let mut seen = std::collections::BTreeMap::new();
        for (v, &l) in labels.iter().enumerate() {
            let next = n + tags.len() + seen.len();
            let c = *seen.entry(l).or_insert(next);
            edges.push((v, c));
        }
        tags.extend(std::iter::repeat_n(r, seen.len()));
    }
    let graph = Graph::from_edges(n + tags.len(), edges).expect("incidence edges are valid");
    IncidenceGraph { graph, domain: n, relations: relations.len(), tags }
}

/// Reads the relations back; each label is the least domain vertex of its class.
pub fn sparse_to_equiv(inc: &IncidenceGraph) -> Result<Vec<Vec<usize>>> {
    let n = inc.domain;
    let g = &inc.graph;
    let mut labels = vec![vec![usize::MAX; n]; inc.relations];
    for (i, &r) in inc.tags.iter().enumerate() {
        let c = n + i;
        let members: Vec<usize> = g.neighbors(c).ones().collect();
        if members.is_empty() || members.iter().any(|&v| v >= n) {
            return Err(Error::structural(None, format!("class vertex {c} is empty or touches another class")));
        }
        for &v in &members {
            if labels[r][v] != usize::MAX {
                return Err(Error::structural(None, format!("vertex {v} has two classes in relation {r}")));
            }
            labels[r][v] = members[0];
        }
    }
    for (r, l) in labels.iter().enumerate() {
        if let Some(v) = l.iter().position(|&x| x == usize::MAX) {
            return Err(Error::structural(None, format!("vertex {v} has no class in relation {r}")));
        }
    }
    Ok(labels)
}

/// `true` iff `g` has no `K_{s,s}` subgraph; refuses large inputs.
pub fn biclique_free_check(g: &Graph, s: usize) -> Result<bool> {
    Ok(!oracle::has_biclique(g, s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_relation() {
        // classes {a, b} and {c}
        let inc = equiv_to_sparse(3, &[vec![0, 0, 2]]);
        assert_eq!(inc.graph.n(), 5);
        assert_eq!(inc.graph.edge_count(), 3);
        assert!(inc.structural_ok());
        assert!(biclique_free_check(&inc.graph, 2).unwrap());
        assert_eq!(sparse_to_equiv(&inc).unwrap(), vec![vec![0, 0, 2]]);
    }

    #[test]
    fn no_relations() {
        let inc = equiv_to_sparse(4, &[]);
        assert_eq!(inc.graph.n(), 4);
        assert!(inc.graph.is_edgeless());
    }

    #[test]
    fn identities() {
        let id: Vec<usize> = (0..4).collect();
        let inc = equiv_to_sparse(4, &[id.clone(), id.clone()]);
        assert!((0..4).all(|v| inc.graph.degree(v) == 2));
        assert_eq!(sparse_to_equiv(&inc).unwrap(), vec![id.clone(), id]);
    }
}
