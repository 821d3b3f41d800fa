//! Reference solvers for checking the designer on small instances.
//!
//! Everything here is deliberately naive and shares no code with the
//! designer or the graph algorithms: reachability is a plain DFS, matching is
//! Kuhn's augmenting-path search, and optimal link sets are found by
//! enumerating subsets of the candidates in order of cost.

mod exhaustive;
mod numeric;

pub use exhaustive::{
    exact_min, exact_min_for_accessibility, exact_min_for_matching, exact_min_interconnections,
    OracleConfig, OracleError, OracleResult, Predicate,
};
pub use numeric::{numeric_realization_check, NumericVerdict};
