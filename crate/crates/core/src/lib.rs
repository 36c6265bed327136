//! Nest-set width of hypergraphs and its algorithmic uses.
//!
//! * [`hypergraph`]: the hypergraph type, its text format and primitive
//!   operations (incidence, residual edges, vertex deletion, β-acyclicity).
//! * [`nestset`]: fixed-parameter search for k-nest-sets, greedy nest-set
//!   elimination orderings (NEOs) and exact nest-set width.
//! * [`decomposition`]: generalized hypertree decompositions built from a NEO.
//! * [`cqneg`]: boolean conjunctive queries with negation, evaluated by
//!   eliminating nest-sets along a NEO.
//! * [`sat`]: Davis–Putnam resolution driven by a NEO, DIMACS I/O and the
//!   reduction from CNF to conjunctive queries with negation.
//! * [`oracles`]: brute-force reference implementations and generators.

pub mod cqneg;
pub mod decomposition;
pub mod error;
pub mod hypergraph;
pub mod nestset;
pub mod oracles;
pub mod sat;
mod text;
mod vertex_set;

pub use error::{Error, Result};
pub use hypergraph::{
    Edge, EdgeId, Hypergraph, HypergraphBuilder, NestVerdict, VertexId, VertexSet,
};
pub use nestset::{nsw, Neo};
