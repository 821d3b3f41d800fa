//! Minimum-weight spanning arborescence (Chu-Liu/Edmonds contraction).

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Sub;

use super::digraph::{reachable_from, DiGraph};
use super::GraphError;

/// Directed spanning tree: every non-root vertex has exactly one tree edge
/// entering it and is reachable from `root`.
#[derive(Debug, Clone, PartialEq)]
pub struct Arborescence {
    pub root: usize,
    /// Sorted `(source, target)` pairs.
    pub tree_edges: Vec<(usize, usize)>,
    pub total_weight: f64,
}

impl Arborescence {
    /// Parent of every vertex (`None` for the root).
    pub fn parents(&self, vertex_count: usize) -> Vec<Option<usize>> {
        let mut p = vec![None; vertex_count];
        for &(u, v) in &self.tree_edges {
            p[v] = Some(u);
        }
        p
    }
}

/// Weight with a secondary key. The secondary key is the edge's rank in
/// `(source, target)` order, so among arborescences of equal weight the one
/// with the smallest rank sum wins.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Cost {
    weight: f64,
    rank: i64,
}

impl Sub for Cost {
    type Output = Cost;
    fn sub(self, rhs: Cost) -> Cost {
        Cost {
            weight: self.weight - rhs.weight,
            rank: self.rank - rhs.rank,
        }
    }
}

impl Cost {
    fn cmp(&self, other: &Cost) -> Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then(self.rank.cmp(&other.rank))
    }
}

#[derive(Debug, Clone, Copy)]
struct Arc {
    from: usize,
    to: usize,
    cost: Cost,
    id: usize,
}

pub fn min_spanning_arborescence(g: &DiGraph, root: usize) -> Result<Arborescence, GraphError> {
    let n = g.vertex_count();
    let reach = reachable_from(g, &[root])?;
    if reach.len() < n {
        let mut seen = vec![false; n];
        for v in reach {
            seen[v] = true;
        }
        let missing = (0..n).find(|&v| !seen[v]).unwrap_or(root);
        return Err(GraphError::NotSpannable(missing));
    }

    let original: Vec<((usize, usize), f64)> = g.edges().collect();
    let arcs: Vec<Arc> = original
        .iter()
        .enumerate()
        .filter(|(_, ((u, v), _))| u != v && *v != root)
        .map(|(id, &((from, to), weight))| Arc {
            from,
            to,
            cost: Cost {
                weight,
                rank: id as i64,
            },
            id,
        })
        .collect();

    let chosen = contract(n, root, arcs, original.len());

    let mut tree_edges: Vec<(usize, usize)> = chosen.iter().map(|&id| original[id].0).collect();
    tree_edges.sort_unstable();
    let total_weight = chosen.iter().map(|&id| original[id].1).sum();
    Ok(Arborescence {
        root,
        tree_edges,
        total_weight,
    })
}

/// One level of the contraction. Every non-root vertex is assumed reachable
/// from `root`, so it always has an entering arc.
fn contract(n: usize, root: usize, arcs: Vec<Arc>, id_count: usize) -> Vec<usize> {
    const NONE: usize = usize::MAX;

    let mut best: Vec<Option<Arc>> = vec![None; n];
    for a in &arcs {
        let slot = &mut best[a.to];
        let better = match slot {
            None => true,
            Some(b) => a.cost.cmp(&b.cost).then(a.id.cmp(&b.id)) == Ordering::Less,
        };
        if better {
            *slot = Some(*a);
        }
    }
    let parent = |v: usize| best[v].expect("vertex without entering arc").from;

    let mut group = vec![NONE; n];
    let mut visit = vec![NONE; n];
    let mut groups = 0;
    let mut on_cycle = vec![false; n];
    for v in 0..n {
        let mut x = v;
        while x != root && visit[x] == NONE && group[x] == NONE {
            visit[x] = v;
            x = parent(x);
        }
        if x != root && visit[x] == v && group[x] == NONE {
            let mut y = x;
            loop {
                group[y] = groups;
                on_cycle[y] = true;
                y = parent(y);
                if y == x {
                    break;
                }
            }
            groups += 1;
        }
    }

    if groups == 0 {
        return (0..n)
            .filter(|&v| v != root)
            .map(|v| best[v].expect("vertex without entering arc").id)
            .collect();
    }

    for g in group.iter_mut() {
        if *g == NONE {
            *g = groups;
            groups += 1;
        }
    }

    let mut target_at_level = vec![NONE; id_count];
    let mut next_arcs = Vec::with_capacity(arcs.len());
    for a in &arcs {
        let (gu, gv) = (group[a.from], group[a.to]);
        if gu == gv {
            continue;
        }
        let cost = if on_cycle[a.to] {
            a.cost - best[a.to].expect("cycle vertex without arc").cost
        } else {
            a.cost
        };
        target_at_level[a.id] = a.to;
        next_arcs.push(Arc {
            from: gu,
            to: gv,
            cost,
            id: a.id,
        });
    }

    let inner = contract(groups, group[root], next_arcs, id_count);

    let mut chosen_in = vec![NONE; n];
    for id in inner {
        chosen_in[target_at_level[id]] = id;
    }
    let mut out = Vec::with_capacity(n.saturating_sub(1));
    let mut entered = vec![false; groups];
    for v in 0..n {
        if chosen_in[v] != NONE && on_cycle[v] {
            entered[group[v]] = true;
        }
    }
    for v in 0..n {
        if v == root {
            continue;
        }
        if chosen_in[v] != NONE {
            out.push(chosen_in[v]);
        } else if on_cycle[v] {
            debug_assert!(entered[group[v]]);
            out.push(best[v].expect("cycle vertex without arc").id);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn star_of_zero_weight_edges() {
        let g = DiGraph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let t = min_spanning_arborescence(&g, 0).unwrap();
        assert_eq!(t.tree_edges, vec![(0, 1), (0, 2), (0, 3)]);
        assert_eq!(t.total_weight, 0.0);
    }

    #[test]
    fn three_cycle_gives_path() {
        let mut g = DiGraph::new(3);
        for (u, v) in [(0, 1), (1, 2), (2, 0)] {
            g.add_weighted_edge(u, v, 1.0).unwrap();
        }
        let t = min_spanning_arborescence(&g, 0).unwrap();
        assert_eq!(t.tree_edges, vec![(0, 1), (1, 2)]);
        assert_eq!(t.total_weight, 2.0);
    }

    #[test]
    fn contraction_breaks_cheap_cycle() {
        // 1 <-> 2 is cheap but must be entered from the root once
        let mut g = DiGraph::new(4);
        for (u, v, w) in [
            (0, 1, 10.0),
            (0, 2, 12.0),
            (1, 2, 1.0),
            (2, 1, 1.0),
            (2, 3, 5.0),
            (1, 3, 6.0),
        ] {
            g.add_weighted_edge(u, v, w).unwrap();
        }
        let t = min_spanning_arborescence(&g, 0).unwrap();
        assert_eq!(t.total_weight, 16.0);
        assert_eq!(t.tree_edges, vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn unreachable_vertex_is_reported() {
        let g = DiGraph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(
            min_spanning_arborescence(&g, 0),
            Err(GraphError::NotSpannable(2))
        );
    }

    #[test]
    fn single_vertex() {
        let g = DiGraph::new(1);
        let t = min_spanning_arborescence(&g, 0).unwrap();
        assert!(t.tree_edges.is_empty());
    }
}
