//! Uncontraction sequences: representation, verification, conversion.

mod convexify;
mod exact;
mod heuristic;
mod tree;
mod verify;

pub use convexify::convexify;
pub use exact::{exact_twinwidth, EXACT_LIMIT};
pub use heuristic::{heuristic_sequence, DEFAULT_BUDGET};
pub use tree::{MergeTree, TreeBuilder, TreeKind};
pub use verify::{verify_convex_width, verify_width, WidthReport};
