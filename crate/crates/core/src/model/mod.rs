//! Structured-system model: patterns, subsystems, the composite instance and
//! the graph test for structural controllability.
//!
//! Index conventions are 0-based throughout. A link from state `q` of
//! subsystem `j` into state `p` of subsystem `i` is the entry `(p, q)` of the
//! block `(i, j)` of the composite state matrix and is admissible only when
//! `i ∈ N(j)`.

mod instance;
mod pattern;
mod structural;
mod transform;

pub use instance::{
    neighbor_map_from_pairs, CompositeInstance, InterconnectionEdge, NeighborMap, StateRef,
    Subsystem,
};
pub use pattern::SparsityPattern;
pub use structural::{
    assemble_composite, check_instance, check_structural_controllability, ControllabilityReport,
};
pub use transform::{dual_observability_instance, union_instance, UnionInstance};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("entry ({row}, {col}) outside a {rows}x{cols} pattern")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("state pattern must be square and non-empty, got {rows}x{cols}")]
    BadStatePattern { rows: usize, cols: usize },
    #[error("input pattern has {rows} rows but the subsystem has {states} states")]
    InputRowMismatch { states: usize, rows: usize },
    #[error("neighbor map has {found} entries, expected {expected}")]
    NeighborMapLength { expected: usize, found: usize },
    #[error("neighbor pair ({from}, {to}) names a subsystem that does not exist")]
    NeighborOutOfRange { from: usize, to: usize },
    #[error("subsystem {0} lists itself as a neighbor")]
    SelfNeighbor(usize),
    #[error("weight {value} on {edge} is not finite and positive")]
    InvalidWeight {
        edge: InterconnectionEdge,
        value: f64,
    },
    #[error("weight given for {0}, which is not a candidate interconnection")]
    WeightNotCandidate(InterconnectionEdge),
    #[error("no weight given for candidate interconnection {0}")]
    MissingWeight(InterconnectionEdge),
    #[error("per-mode neighbor maps do not union to the flat neighbor map")]
    ModeUnionMismatch,
    #[error("instance has no switching modes")]
    NoModes,
    #[error("interconnection {0} violates the neighbor constraint")]
    InadmissibleEdge(InterconnectionEdge),
    #[error("state pattern is {a_rows}x{a_cols} but input pattern has {b_rows} rows")]
    ShapeMismatch {
        a_rows: usize,
        a_cols: usize,
        b_rows: usize,
    },
}
