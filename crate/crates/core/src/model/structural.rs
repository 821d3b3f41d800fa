use alloc::vec::Vec;

use super::{CompositeInstance, InterconnectionEdge, ModelError, SparsityPattern};
use crate::graphs::{max_bipartite_matching, reachable_from, BipartiteGraph, DiGraph};

/// Outcome of the accessibility + no-dilation test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControllabilityReport {
    pub state_count: usize,
    pub accessible: bool,
    /// Composite state indices with no directed path from any input.
    pub inaccessible_states: Vec<usize>,
    /// Size of a maximum matching of the system bipartite graph.
    pub matching_size: usize,
    pub dilation_free: bool,
    pub controllable: bool,
}

impl ControllabilityReport {
    /// How many state rows a maximum matching leaves uncovered.
    pub fn matching_deficiency(&self) -> usize {
        self.state_count - self.matching_size
    }
}

/// Composite `(Ā_T, B̄_T)` for the given interconnections.
///
/// Diagonal blocks are the subsystem patterns, `B̄_T` is block diagonal, and
/// each edge adds one off-diagonal entry. Mode tags are ignored for the
/// pattern but still checked for admissibility.
pub fn assemble_composite(
    inst: &CompositeInstance,
    edges: &[InterconnectionEdge],
) -> Result<(SparsityPattern, SparsityPattern), ModelError> {
    let n = inst.state_count();
    let m = inst.input_count();
    let mut a = SparsityPattern::zeros(n, n);
    let mut b = SparsityPattern::zeros(n, m);
    for (i, s) in inst.subsystems().iter().enumerate() {
        let (so, io) = (inst.state_offset(i), inst.input_offset(i));
        for (r, c) in s.a_pattern().nonzeros() {
            a.insert(so + r, so + c)?;
        }
        for (r, c) in s.b_pattern().nonzeros() {
            b.insert(so + r, io + c)?;
        }
    }
    for e in edges {
        if !inst.is_admissible(e) {
            return Err(ModelError::InadmissibleEdge(*e));
        }
        a.insert(inst.global_state(e.dst), inst.global_state(e.src))?;
    }
    Ok((a, b))
}

/// Structural controllability of `(a, b)`: every state reachable from an
/// input in the system digraph, and the rows of `[a b]` admit a perfect
/// matching onto its columns.
pub fn check_structural_controllability(
    a: &SparsityPattern,
    b: &SparsityPattern,
) -> Result<ControllabilityReport, ModelError> {
    if !a.is_square() || b.rows() != a.rows() {
        return Err(ModelError::ShapeMismatch {
            a_rows: a.rows(),
            a_cols: a.cols(),
            b_rows: b.rows(),
        });
    }
    let n = a.rows();
    let m = b.cols();

    // states 0..n, inputs n..n+m; a[p][q] is the arc x_q -> x_p
    let mut digraph = DiGraph::new(n + m);
    for (p, q) in a.nonzeros() {
        digraph.add_edge(q, p).expect("state index in range");
    }
    for (p, q) in b.nonzeros() {
        digraph.add_edge(n + q, p).expect("input index in range");
    }
    let sources: Vec<usize> = (n..n + m).collect();
    let mut reached = alloc::vec![false; n + m];
    for v in reachable_from(&digraph, &sources).expect("sources in range") {
        reached[v] = true;
    }
    let inaccessible_states: Vec<usize> = (0..n).filter(|&v| !reached[v]).collect();

    // left: state rows; right: state columns then input columns
    let mut bip = BipartiteGraph::new(n, n + m);
    for (p, q) in a.nonzeros() {
        bip.add_edge(p, q).expect("state index in range");
    }
    for (p, q) in b.nonzeros() {
        bip.add_edge(p, n + q).expect("input index in range");
    }
    let matching_size = max_bipartite_matching(&bip).len();

    let accessible = inaccessible_states.is_empty();
    let dilation_free = matching_size == n;
    Ok(ControllabilityReport {
        state_count: n,
        accessible,
        inaccessible_states,
        matching_size,
        dilation_free,
        controllable: accessible && dilation_free,
    })
}

/// Assembles the composite for `edges` and tests it.
pub fn check_instance(
    inst: &CompositeInstance,
    edges: &[InterconnectionEdge],
) -> Result<ControllabilityReport, ModelError> {
    let (a, b) = assemble_composite(inst, edges)?;
    check_structural_controllability(&a, &b)
}
