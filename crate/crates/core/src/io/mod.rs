//! Text formats: `.gr` graphs, `.tww` contraction sequences, JSON certificates.

mod cert;
mod gr;
mod tww;

pub use cert::{read_cert, write_cert, CERT_VERSION};
pub use gr::{parse_gr, write_bipartite_gr, write_gr, GraphFile};
pub use tww::{parse_tww, write_tww};
