//! Fixed-parameter search for nest-sets and nest-set elimination orderings.

mod conflict;
mod expand;
mod neo;

pub use conflict::{conflict_graph, minimal_vertex_covers, ConflictGraph};
pub use expand::{find_k_nest_set, nest_expand};
pub use neo::{check_neo, compute_neo, nsw, nsw_at_most, validate_neo, Neo, NeoViolation};
