//! Two-stage interconnection design.
//!
//! Stage 1 prices every candidate link in the composite bipartite graph and
//! takes a minimum-weight perfect matching; the links it uses are the
//! cheapest way to remove every dilation. Stage 2 condenses each subsystem
//! into its strongly connected components, hangs them off a master input,
//! and takes a minimum-weight arborescence; its cross-subsystem arcs are the
//! cheapest way to make every state accessible. The union of both link sets
//! is structurally controllable and costs at most twice the optimum, since
//! each stage alone is a lower bound on it.

mod condensation;
mod design;
mod stage1;
mod stage2;

pub use condensation::{build_condensation, CondensationGraph, SccNode, MASTER_INPUT};
pub use design::{
    design, design_switched, design_switched_with, design_weighted, design_with, DesignResult,
};
pub use stage1::{build_stage1_bipartite, stage1, Stage1, Stage1Graph};
pub use stage2::{stage2, Stage2};

use alloc::vec::Vec;
use thiserror::Error;

use crate::model::{ModelError, StateRef};

/// How a set of interconnections is priced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CostModel {
    /// Every link costs 1.
    #[default]
    Cardinality,
    /// Links cost their instance weight (1 when the instance has none).
    Weighted,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DesignError {
    #[error(
        "no feasible topology: {} inaccessible state(s), matching deficiency {matching_deficiency} \
         even with every admissible interconnection",
        inaccessible.len()
    )]
    Infeasible {
        inaccessible: Vec<StateRef>,
        matching_deficiency: usize,
    },
    #[error("no perfect matching exists even with every admissible interconnection")]
    Stage1Infeasible,
    #[error("some component cannot be reached from the inputs even with every admissible interconnection")]
    Stage2Infeasible,
    #[error("designed interconnections failed the structural controllability check")]
    VerificationFailed,
    #[error(transparent)]
    Model(#[from] ModelError),
}
