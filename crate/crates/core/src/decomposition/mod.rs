//! Generalized hypertree decompositions from nest-set elimination orderings.
//!
//! The construction peels the first nest-set `s` off the ordering: its guard
//! together with one edge for each vertex of `s` outside the guard forms the
//! root node (an exhaustive hinge), and every connected component of what the
//! root does not cover is decomposed recursively and hung below it.

mod ghtd;
mod hinge;

pub use ghtd::{ghtd_from_neo, validate_ghtd, Ghtd, GhtdNode, GhtdReport};
pub use hinge::{exhaustive_hinge, exhaustive_subhypergraph, Hinge};
