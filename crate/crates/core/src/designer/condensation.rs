use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::CostModel;
use crate::graphs::{reachable_from, strongly_connected_components, DiGraph};
use crate::model::{CompositeInstance, InterconnectionEdge, StateRef};

/// Vertex id of the master input in a [`CondensationGraph`].
pub const MASTER_INPUT: usize = 0;

/// One strongly connected component of a subsystem's state digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccNode {
    pub subsystem: usize,
    /// Local state indices, sorted.
    pub states: Vec<usize>,
}

/// Subsystem SCCs hung off a single master input.
///
/// Vertex 0 is the master input; vertex `g + 1` is `scc_nodes[g]`. Nodes are
/// listed subsystem by subsystem, each subsystem's components sources first.
#[derive(Debug, Clone, PartialEq)]
pub struct CondensationGraph {
    pub scc_nodes: Vec<SccNode>,
    /// Arcs between components of the same subsystem (weight 0).
    pub intra: Vec<(usize, usize)>,
    /// Cross-subsystem arcs with their realizing links, cheapest first and
    /// then in `(src, dst)` order. The arc costs as much as its first link.
    pub cross: BTreeMap<(usize, usize), Vec<InterconnectionEdge>>,
    /// Master input to every component holding a state its own inputs reach
    /// (weight 0).
    pub input: Vec<(usize, usize)>,
    costs: CostModel,
    node_of: Vec<Vec<usize>>,
}

impl CondensationGraph {
    pub fn vertex_count(&self) -> usize {
        self.scc_nodes.len() + 1
    }

    /// Condensation vertex holding state `s`.
    pub fn vertex_of(&self, s: StateRef) -> usize {
        self.node_of[s.subsystem][s.state]
    }

    pub fn cost_model(&self) -> CostModel {
        self.costs
    }

    /// Cost of a cross arc, or `None` for zero-cost and unknown arcs.
    pub fn cross_cost(&self, inst: &CompositeInstance, arc: (usize, usize)) -> Option<f64> {
        let e = self.cross.get(&arc)?.first()?;
        Some(match self.costs {
            CostModel::Cardinality => 1.0,
            CostModel::Weighted => inst.edge_cost(e),
        })
    }

    pub fn to_digraph(&self, inst: &CompositeInstance) -> DiGraph {
        let mut g = DiGraph::new(self.vertex_count());
        for &(u, v) in self.intra.iter().chain(&self.input) {
            g.add_edge(u, v).expect("vertex in range");
        }
        for &arc in self.cross.keys() {
            let w = self.cross_cost(inst, arc).expect("cross arc has a link");
            g.add_weighted_edge(arc.0, arc.1, w)
                .expect("validated weights are finite and positive");
        }
        g
    }
}

pub fn build_condensation(inst: &CompositeInstance, costs: CostModel) -> CondensationGraph {
    let mut scc_nodes = Vec::new();
    let mut node_of = Vec::with_capacity(inst.subsystem_count());
    let mut intra = Vec::new();
    let mut input = Vec::new();

    for (i, s) in inst.subsystems().iter().enumerate() {
        let n = s.state_dim();
        let m = s.input_dim();
        let mut local = DiGraph::new(n + m);
        for (p, q) in s.a_pattern().nonzeros() {
            local.add_edge(q, p).expect("state in range");
        }
        for (p, q) in s.b_pattern().nonzeros() {
            local.add_edge(n + q, p).expect("input in range");
        }

        let mut states_only = DiGraph::new(n);
        for (p, q) in s.a_pattern().nonzeros() {
            states_only.add_edge(q, p).expect("state in range");
        }
        let base = scc_nodes.len() + 1;
        let mut of = vec![0usize; n];
        for (g, comp) in strongly_connected_components(&states_only)
            .into_iter()
            .enumerate()
        {
            for &x in &comp {
                of[x] = base + g;
            }
            scc_nodes.push(SccNode {
                subsystem: i,
                states: comp,
            });
        }

        let mut arcs: Vec<(usize, usize)> = states_only
            .edges()
            .map(|((q, p), _)| (of[q], of[p]))
            .filter(|(u, v)| u != v)
            .collect();
        arcs.sort_unstable();
        arcs.dedup();
        intra.extend(arcs);

        let inputs: Vec<usize> = (n..n + m).collect();
        let mut fed: Vec<usize> = reachable_from(&local, &inputs)
            .expect("inputs in range")
            .into_iter()
            .filter(|&x| x < n)
            .map(|x| of[x])
            .collect();
        fed.sort_unstable();
        fed.dedup();
        input.extend(fed.into_iter().map(|v| (MASTER_INPUT, v)));

        node_of.push(of);
    }

    let mut cross: BTreeMap<(usize, usize), Vec<InterconnectionEdge>> = BTreeMap::new();
    for e in inst.candidate_edges() {
        let arc = (
            node_of[e.src.subsystem][e.src.state],
            node_of[e.dst.subsystem][e.dst.state],
        );
        cross.entry(arc).or_default().push(e);
    }
    if costs == CostModel::Weighted {
        for links in cross.values_mut() {
            links.sort_by(|a, b| {
                inst.edge_cost(a)
                    .total_cmp(&inst.edge_cost(b))
                    .then(a.cmp(b))
            });
        }
    }

    CondensationGraph {
        scc_nodes,
        intra,
        cross,
        input,
        costs,
        node_of,
    }
}
