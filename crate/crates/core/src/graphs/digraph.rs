use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use super::{check_weight, GraphError};

/// Directed graph on vertices `0..vertex_count` with optional edge weights.
///
/// Parallel edges collapse to a single edge carrying the minimum weight.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiGraph {
    vertex_count: usize,
    edges: BTreeMap<(usize, usize), f64>,
}

impl DiGraph {
    pub fn new(vertex_count: usize) -> Self {
        DiGraph {
            vertex_count,
            edges: BTreeMap::new(),
        }
    }

    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = DiGraph::new(vertex_count);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Adds `u -> v` with weight 0.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.add_weighted_edge(u, v, 0.0)
    }

    pub fn add_weighted_edge(&mut self, u: usize, v: usize, weight: f64) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let weight = check_weight(weight)?;
        self.edges
            .entry((u, v))
            .and_modify(|w| {
                if weight < *w {
                    *w = weight;
                }
            })
            .or_insert(weight);
        Ok(())
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains_key(&(u, v))
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        self.edges.get(&(u, v)).copied()
    }

    /// Edges in lexicographic `(source, target)` order.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.edges.iter().map(|(&e, &w)| (e, w))
    }

    /// Out-adjacency lists; each list is sorted by target.
    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in self.edges.keys() {
            adj[u].push(v);
        }
        adj
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count,
            })
        }
    }
}

/// Vertices reachable from any of `sources` (sources included), ascending.
pub fn reachable_from(g: &DiGraph, sources: &[usize]) -> Result<Vec<usize>, GraphError> {
    for &s in sources {
        g.check_vertex(s)?;
    }
    let adj = g.successors();
    let mut seen = vec![false; g.vertex_count];
    let mut stack: Vec<usize> = Vec::new();
    for &s in sources {
        if !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    Ok((0..g.vertex_count).filter(|&v| seen[v]).collect())
}

/// Strongly connected components in topological order of the condensation
/// (sources first).
///
/// Each component lists its vertices in ascending order. When several
/// components are ready at once the one holding the smallest vertex comes
/// first, which makes the ordering canonical.
pub fn strongly_connected_components(g: &DiGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count;
    let adj = g.successors();
    let comp_of = tarjan(&adj);
    let comp_count = comp_of.iter().map(|&c| c + 1).max().unwrap_or(0);

    let mut members = vec![Vec::new(); comp_count];
    for v in 0..n {
        members[comp_of[v]].push(v);
    }

    let mut indegree = vec![0usize; comp_count];
    let mut dag = vec![Vec::new(); comp_count];
    for &(u, v) in g.edges.keys() {
        let (cu, cv) = (comp_of[u], comp_of[v]);
        if cu != cv {
            dag[cu].push(cv);
            indegree[cv] += 1;
        }
    }

    let mut ready: BinaryHeap<Reverse<(usize, usize)>> = (0..comp_count)
        .filter(|&c| indegree[c] == 0)
        .map(|c| Reverse((members[c][0], c)))
        .collect();
    let mut order = Vec::with_capacity(comp_count);
    while let Some(Reverse((_, c))) = ready.pop() {
        order.push(core::mem::take(&mut members[c]));
        for &d in &dag[c] {
            indegree[d] -= 1;
            if indegree[d] == 0 {
                ready.push(Reverse((members[d][0], d)));
            }
        }
    }
    order
}

/// Iterative Tarjan; returns the component id of every vertex.
fn tarjan(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn singleton_component() {
        let g = DiGraph::new(1);
        assert_eq!(strongly_connected_components(&g), vec![vec![0]]);
    }

    #[test]
    fn full_cycle_is_one_component() {
        let g = DiGraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(strongly_connected_components(&g), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn fork_with_self_loop_splits_into_three() {
        // x1 -> x2, x1 -> x3, x3 -> x3
        let g = DiGraph::from_edges(3, [(0, 1), (0, 2), (2, 2)]).unwrap();
        assert_eq!(
            strongly_connected_components(&g),
            vec![vec![0], vec![1], vec![2]]
        );
    }

    #[test]
    fn components_come_out_sources_first() {
        let g = DiGraph::from_edges(5, [(3, 4), (4, 3), (4, 0), (0, 1), (2, 1)]).unwrap();
        let comps = strongly_connected_components(&g);
        assert_eq!(comps, vec![vec![2], vec![3, 4], vec![0], vec![1]]);
    }

    #[test]
    fn reachability() {
        let g = DiGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(reachable_from(&g, &[0]).unwrap(), vec![0, 1, 2]);
        assert_eq!(reachable_from(&g, &[1]).unwrap(), vec![1, 2]);
        assert_eq!(reachable_from(&g, &[0, 1, 2]).unwrap(), vec![0, 1, 2]);
        assert!(reachable_from(&g, &[3]).is_err());
    }

    #[test]
    fn parallel_edges_keep_minimum() {
        let mut g = DiGraph::new(2);
        g.add_weighted_edge(0, 1, 3.0).unwrap();
        g.add_weighted_edge(0, 1, 1.5).unwrap();
        g.add_weighted_edge(0, 1, 2.0).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.weight(0, 1), Some(1.5));
    }

    #[test]
    fn rejects_bad_weights_and_vertices() {
        let mut g = DiGraph::new(2);
        assert_eq!(
            g.add_weighted_edge(0, 1, -1.0),
            Err(GraphError::InvalidWeight(-1.0))
        );
        assert!(g.add_weighted_edge(0, 1, f64::NAN).is_err());
        assert!(matches!(
            g.add_edge(0, 2),
            Err(GraphError::VertexOutOfRange {
                vertex: 2,
                count: 2
            })
        ));
    }
}
