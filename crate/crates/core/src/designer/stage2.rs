use alloc::vec::Vec;

use super::{build_condensation, CondensationGraph, CostModel, DesignError, MASTER_INPUT};
use crate::graphs::{min_spanning_arborescence, Arborescence, GraphError};
use crate::model::{CompositeInstance, InterconnectionEdge};

#[derive(Debug, Clone, PartialEq)]
pub struct Stage2 {
    /// One realizing link per cross-subsystem tree arc, sorted.
    pub edges: Vec<InterconnectionEdge>,
    pub cost: f64,
    pub condensation: CondensationGraph,
    pub arborescence: Arborescence,
}

/// Cheapest set of links after which every state is reachable from an input.
pub fn stage2(inst: &CompositeInstance, costs: CostModel) -> Result<Stage2, DesignError> {
    let condensation = build_condensation(inst, costs);
    let g = condensation.to_digraph(inst);
    let arborescence = match min_spanning_arborescence(&g, MASTER_INPUT) {
        Ok(t) => t,
        Err(GraphError::NotSpannable(_)) => return Err(DesignError::Stage2Infeasible),
        Err(e) => unreachable!("condensation is well formed: {e}"),
    };
    let mut edges: Vec<InterconnectionEdge> = arborescence
        .tree_edges
        .iter()
        .filter_map(|arc| condensation.cross.get(arc).map(|links| links[0]))
        .collect();
    edges.sort_unstable();
    Ok(Stage2 {
        cost: arborescence.total_weight,
        edges,
        condensation,
        arborescence,
    })
}
