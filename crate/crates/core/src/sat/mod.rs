//! CNF satisfiability by Davis–Putnam resolution along a NEO of the formula
//! hypergraph, and the reduction from SAT to CQ¬ evaluation.

mod formula;
mod reduce;
mod resolve;

pub use formula::{formula_hypergraph, var_name, var_of_name, Clause, CnfFormula, Lit};
pub use reduce::sat_to_cqneg;
pub use resolve::{dp_resolve, eliminate_nest_set, solve, NestProfile, SolveReport, Verdict};
