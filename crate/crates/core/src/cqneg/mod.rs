//! Boolean conjunctive queries with negation, evaluated by eliminating the
//! nest-sets of a NEO one at a time.
//!
//! Each step first folds the positive literals around the nest-set into a
//! new positive literal `P` plus a negative literal `¬C`, then removes the
//! nest-set from the remaining negative literals by resolution on the binary
//! encoding of their tuples.

mod boolean;
mod elim;
mod encode;
mod normalize;
mod query;

pub use boolean::{
    eliminate_boolean_nest_point, eliminate_dense, eliminate_packed, Bits, DenseLiteral,
    PackedLiteral, DENSE_MAX_SCOPE,
};
pub use elim::{
    elim_negative, elim_positive, evaluate, evaluate_traced, s_eliminate, s_eliminate_step,
    EliminationStep, Evaluation, PositiveElimination, StepTrace,
};
pub use encode::{binary_decode, binary_encode, bit_var, domain_bits, encode_value, EncodedQuery};
pub use normalize::{normalize, s_extension};
pub(crate) use query::all_tuples;
pub use query::{
    parse_query, query_hypergraph, Database, Literal, LiteralSpec, Polarity, QueryInstance,
    Relation, Sizes,
};
