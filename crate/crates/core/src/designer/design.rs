use alloc::vec::Vec;

use super::{stage1, stage2, CostModel, DesignError};
use crate::model::{check_instance, union_instance, CompositeInstance, InterconnectionEdge};

/// A designed topology and its optimality certificate.
///
/// Each stage is optimal for a relaxation of the full problem, so
/// `lower_bound` never exceeds the true optimum and `ratio_bound` bounds how
/// far `union_cost` can be from it.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignResult {
    pub cost_model: CostModel,
    pub stage1_edges: Vec<InterconnectionEdge>,
    pub stage2_edges: Vec<InterconnectionEdge>,
    /// Sorted, with links picked by both stages listed once.
    pub union_edges: Vec<InterconnectionEdge>,
    pub stage1_cost: f64,
    pub stage2_cost: f64,
    pub union_cost: f64,
    pub lower_bound: f64,
    /// `union_cost / lower_bound`, or 1 when nothing was needed.
    pub ratio_bound: f64,
}

impl DesignResult {
    pub fn link_count(&self) -> usize {
        self.union_edges.len()
    }
}

/// Minimum-cardinality design.
pub fn design(inst: &CompositeInstance) -> Result<DesignResult, DesignError> {
    design_with(inst, CostModel::Cardinality)
}

/// Minimum-weight design; an instance without weights prices every link at 1.
pub fn design_weighted(inst: &CompositeInstance) -> Result<DesignResult, DesignError> {
    design_with(inst, CostModel::Weighted)
}

pub fn design_with(
    inst: &CompositeInstance,
    costs: CostModel,
) -> Result<DesignResult, DesignError> {
    let everything = inst.candidate_edges();
    let full = check_instance(inst, &everything)?;
    if !full.controllable {
        return Err(DesignError::Infeasible {
            inaccessible: full
                .inaccessible_states
                .iter()
                .map(|&g| inst.locate(g))
                .collect(),
            matching_deficiency: full.matching_deficiency(),
        });
    }

    let s1 = stage1(inst, costs)?;
    let s2 = stage2(inst, costs)?;

    let mut union_edges: Vec<InterconnectionEdge> =
        s1.edges.iter().chain(&s2.edges).copied().collect();
    union_edges.sort_unstable_by_key(|e| e.key());
    union_edges.dedup_by_key(|e| e.key());

    let price = |e: &InterconnectionEdge| match costs {
        CostModel::Cardinality => 1.0,
        CostModel::Weighted => inst.edge_cost(e),
    };
    let union_cost: f64 = union_edges.iter().map(price).sum();
    let lower_bound = s1.cost.max(s2.cost);
    let ratio_bound = if lower_bound > 0.0 {
        union_cost / lower_bound
    } else {
        1.0
    };

    if !check_instance(inst, &union_edges)?.controllable {
        return Err(DesignError::VerificationFailed);
    }

    Ok(DesignResult {
        cost_model: costs,
        stage1_edges: s1.edges,
        stage2_edges: s2.edges,
        union_edges,
        stage1_cost: s1.cost,
        stage2_cost: s2.cost,
        union_cost,
        lower_bound,
        ratio_bound,
    })
}

/// Minimum-cardinality design for a switched topology.
///
/// Designs on the union of the modes, then tags every link with the smallest
/// mode that admits it.
pub fn design_switched(inst: &CompositeInstance) -> Result<DesignResult, DesignError> {
    design_switched_with(inst, CostModel::Cardinality)
}

pub fn design_switched_with(
    inst: &CompositeInstance,
    costs: CostModel,
) -> Result<DesignResult, DesignError> {
    let union = union_instance(inst)?;
    let mut out = design_with(&union.instance, costs)?;
    let tag = |edges: &mut Vec<InterconnectionEdge>| {
        for e in edges.iter_mut() {
            e.mode = union.first_mode(e.src.subsystem, e.dst.subsystem);
            debug_assert!(e.mode.is_some());
        }
    };
    tag(&mut out.stage1_edges);
    tag(&mut out.stage2_edges);
    tag(&mut out.union_edges);
    Ok(out)
}
