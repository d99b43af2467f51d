//! Twin-width, stability, and sparsification toolkit.
//!
//! The library verifies and manipulates uncontraction sequences, computes
//! quasi-ladder indices, runs the freezing decomposition of ordered bipartite
//! graphs of bounded convex twin-width, produces χ-bounded colorings with a
//! checkable certificate, and encodes stable bipartite graphs losslessly as
//! biclique-free incidence graphs.

pub mod chibound;
pub mod colnum;
pub mod contraction;
pub mod decompose;
pub mod error;
pub mod gen;
pub mod graph;
pub mod io;
pub mod ladder;
pub mod oracle;
pub mod par;
pub mod sparsify;

pub use error::{Error, Result};
