//! Lossless codec from graphs of bounded twin-width and bounded index to
//! `K_{t,t}`-free incidence graphs: graph → bipartite gadget → annotated
//! equivalence structure → incidence graph, and back.

mod equiv;
mod gadget;
mod incidence;

pub use equiv::{
    decode_equiv, encode_equiv, theoretical_relations, EquivClass, EquivNode, EquivStructure, Relation, Sidecar,
    SkelNode, SkelRelation, FORMAT_VERSION,
};
pub use gadget::{decode_gadget, encode_gadget, gadget_id, gadget_sequence, gadget_tree};
pub use incidence::{biclique_free_check, equiv_to_sparse, sparse_to_equiv, IncidenceGraph, IncidenceRecord};

use serde::{Deserialize, Serialize};

use crate::contraction::{convexify, verify_convex_width, MergeTree};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph};
use crate::ladder::measure_quasi_index_in;
use crate::oracle::BICLIQUE_LIMIT;

#[derive(Clone, Debug)]
pub struct Encoded {
    pub structure: EquivStructure,
    pub incidence: IncidenceGraph,
    pub sidecar: Sidecar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub equal: bool,
    /// Exhaustive `K_{t'+1,t'+1}` check; `None` when the incidence graph is too large.
    pub biclique_free: Option<bool>,
    pub structural: bool,
    pub relations: usize,
    pub slots: usize,
    pub theoretical: u128,
    pub depth: usize,
    pub k: usize,
    pub d: usize,
    pub domain: usize,
    pub incidence_vertices: usize,
}

/// Encodes a bipartite graph directly, measuring `k` and `d` on it.
pub fn encode_bipartite(g: &BipartiteGraph, t: &MergeTree) -> Result<Encoded> {
    encode_with(g, t, false)
}

/// Encodes any graph through its gadget, lifting `t` to the gadget.
pub fn encode_graph(g: &Graph, t: &MergeTree) -> Result<Encoded> {
    let b = encode_gadget(g);
    let gt = gadget_sequence(g, t, &b)?;
    encode_with(&b, &gt, true)
}

fn encode_with(g: &BipartiteGraph, t: &MergeTree, gadget: bool) -> Result<Encoded> {
    let (og, ct) = convexify(g, t)?;
    let d = verify_convex_width(&og, &ct)?.width.max(2);
    let k = measure_quasi_index_in(g.graph(), g.left(), g.right()).max(1);
    let structure = encode_equiv(&og, &ct, k, d)?;
    let (labels, sidecar) = structure.flat(gadget);
    let stored: Vec<Vec<usize>> = sidecar.realized.iter().map(|&s| labels[s].clone()).collect();
    let incidence = equiv_to_sparse(g.n(), &stored);
    Ok(Encoded { structure, incidence, sidecar })
}

/// Inverse of the encoders: returns the original graph (undoing the gadget
/// when the sidecar says so).
pub fn decode(inc: &IncidenceGraph, sidecar: &Sidecar) -> Result<Graph> {
    if inc.domain != sidecar.n || inc.relations != sidecar.realized.len() {
        return Err(Error::structural(None, "incidence graph does not match the sidecar"));
    }
    let stored = sparse_to_equiv(inc)?;
    let mut labels: Vec<Vec<usize>> = (0..sidecar.slots).map(|_| (0..sidecar.n).collect()).collect();
    for (&slot, l) in sidecar.realized.iter().zip(stored) {
        *labels.get_mut(slot).ok_or_else(|| Error::structural(None, "realized slot out of range"))? = l;
    }
    let s = EquivStructure::from_flat(sidecar, &labels)?;
    let b = decode_equiv(&s)?;
    if sidecar.gadget {
        decode_gadget(&b)
    } else {
        Ok(b.into_graph())
    }
}

fn report(original: &Graph, enc: &Encoded) -> Result<PipelineReport> {
    let back = decode(&enc.incidence, &enc.sidecar)?;
    let inc = &enc.incidence;
    let biclique_free = if inc.graph.n() <= BICLIQUE_LIMIT {
        Some(biclique_free_check(&inc.graph, inc.relations + 1)?)
    } else {
        None
    };
    let s = &enc.structure;
    Ok(PipelineReport {
        equal: &back == original,
        biclique_free,
        structural: inc.structural_ok(),
        relations: inc.relations,
        slots: enc.sidecar.slots,
        theoretical: theoretical_relations(s.k, s.d),
        depth: s.root.depth(),
        k: s.k,
        d: s.d,
        domain: s.n,
        incidence_vertices: inc.graph.n(),
    })
}

/// Encode through the gadget, decode again, and check the result.
pub fn pipeline(g: &Graph, t: &MergeTree) -> Result<(Encoded, PipelineReport)> {
    let enc = encode_graph(g, t)?;
    let rep = report(g, &enc)?;
    Ok((enc, rep))
}

pub fn pipeline_bipartite(g: &BipartiteGraph, t: &MergeTree) -> Result<(Encoded, PipelineReport)> {
    let enc = encode_bipartite(g, t)?;
    let rep = report(g.graph(), &enc)?;
    Ok((enc, rep))
}
