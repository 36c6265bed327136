//! Brute-force reference implementations and instance generators.
//!
//! Every oracle refuses inputs beyond a fixed size instead of running for a
//! long time; the limits are the `MAX_*` constants.

mod brute;
mod gadget;
mod graph;
mod random;

pub use brute::{
    brute_force_eval, brute_force_sat, brute_minimal_vertex_covers, brute_nest_sets, brute_nsw,
    MAX_ASSIGNMENTS, MAX_COVER_VERTICES, MAX_NEST_SET_VERTICES, MAX_NSW_VERTICES, MAX_SAT_VARS,
};
pub use gadget::{gadget_vertex, gen_vc_reduction, vc_gadget_nest_set};
pub use graph::{graphs_up_to_isomorphism, SimpleGraph};
pub use random::{
    gen_cycle, gen_random, random_cnf, random_hypergraph, random_query, CnfParams,
    HypergraphParams, QueryParams, RandomInstance, RandomParams,
};
