//! Minimum-cost interconnection design for structured composite systems.
//!
//! A composite system is a collection of structured subsystems `(Ā_i, B̄_i)`
//! (zero/nonzero patterns only) that may exchange state information along a
//! constrained out-neighbor relation. This crate finds a small set of
//! state-to-state interconnections that makes the composite pattern
//! structurally controllable, together with a per-instance certificate
//! bounding the result within a factor of two of the optimum.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! Modules:
//! - [`graphs`]: reachability, SCCs, bipartite matchings, arborescences.
//! - [`model`]: sparsity patterns, subsystems, composite assembly and the
//!   accessibility + no-dilation test for structural controllability.
//! - [`designer`]: the two-stage (matching, then arborescence) design with
//!   weighted and switched variants.
//! - [`oracle`]: exhaustive solvers and a numeric realization check used to
//!   validate the designer at desk scale.
//! - [`generate`]: seeded random instances and the Hamiltonian-path
//!   reduction family.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod designer;
pub mod generate;
pub mod graphs;
pub mod model;
pub mod oracle;

pub use designer::{
    design, design_switched, design_weighted, CondensationGraph, CostModel, DesignError,
    DesignResult,
};
pub use graphs::{Arborescence, BipartiteGraph, DiGraph, GraphError, Matching};
pub use model::{
    assemble_composite, check_structural_controllability, CompositeInstance, ControllabilityReport,
    InterconnectionEdge, ModelError, SparsityPattern, StateRef, Subsystem,
};
pub use oracle::{OracleConfig, OracleError, OracleResult};
