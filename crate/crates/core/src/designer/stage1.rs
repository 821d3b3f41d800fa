use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{CostModel, DesignError};
use crate::graphs::{min_weight_perfect_matching, BipartiteGraph, GraphError, Matching};
use crate::model::{CompositeInstance, InterconnectionEdge};

/// Composite bipartite graph with every candidate link priced in.
///
/// Left vertex `g` is the row of composite state `g`. Right vertices are
/// the composite state columns `0..n_T` followed by the input columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Stage1Graph {
    pub graph: BipartiteGraph,
    /// The interconnection behind each priced `(left, right)` edge; edges not
    /// in this map come from the subsystem patterns and cost 0.
    pub interconnections: BTreeMap<(usize, usize), InterconnectionEdge>,
}

pub fn build_stage1_bipartite(inst: &CompositeInstance, costs: CostModel) -> Stage1Graph {
    let n = inst.state_count();
    let mut graph = BipartiteGraph::new(n, n + inst.input_count());
    for (i, s) in inst.subsystems().iter().enumerate() {
        let (so, io) = (inst.state_offset(i), inst.input_offset(i));
        for (p, q) in s.a_pattern().nonzeros() {
            graph.add_edge(so + p, so + q).expect("state in range");
        }
        for (p, q) in s.b_pattern().nonzeros() {
            graph.add_edge(so + p, n + io + q).expect("input in range");
        }
    }
    let mut interconnections = BTreeMap::new();
    for e in inst.candidate_edges() {
        let l = inst.global_state(e.dst);
        let r = inst.global_state(e.src);
        let w = match costs {
            CostModel::Cardinality => 1.0,
            CostModel::Weighted => inst.edge_cost(&e),
        };
        graph
            .add_weighted_edge(l, r, w)
            .expect("validated weights are finite and positive");
        interconnections.insert((l, r), e);
    }
    Stage1Graph {
        graph,
        interconnections,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stage1 {
    /// Links used by the optimal matching, sorted.
    pub edges: Vec<InterconnectionEdge>,
    pub cost: f64,
    pub matching: Matching,
}

/// Cheapest set of links after which the composite has no dilation.
pub fn stage1(inst: &CompositeInstance, costs: CostModel) -> Result<Stage1, DesignError> {
    let g = build_stage1_bipartite(inst, costs);
    let matching = match min_weight_perfect_matching(&g.graph) {
        Ok(m) => m,
        Err(GraphError::NoPerfectMatching) => return Err(DesignError::Stage1Infeasible),
        Err(e) => unreachable!("stage-1 graph is well formed: {e}"),
    };
    let mut edges: Vec<InterconnectionEdge> = matching
        .pairs
        .iter()
        .filter_map(|lr| g.interconnections.get(lr).copied())
        .collect();
    edges.sort_unstable();
    Ok(Stage1 {
        cost: matching.total_weight,
        edges,
        matching,
    })
}
