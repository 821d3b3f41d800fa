use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::{check_weight, GraphError};

/// Bipartite graph with `left_count` left and `right_count` right vertices.
///
/// Unweighted edges carry weight 0; parallel edges keep the minimum weight.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BipartiteGraph {
    left_count: usize,
    right_count: usize,
    edges: BTreeMap<(usize, usize), f64>,
}

impl BipartiteGraph {
    pub fn new(left_count: usize, right_count: usize) -> Self {
        BipartiteGraph {
            left_count,
            right_count,
            edges: BTreeMap::new(),
        }
    }

    pub fn from_edges<I>(
        left_count: usize,
        right_count: usize,
        edges: I,
    ) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = BipartiteGraph::new(left_count, right_count);
        for (l, r) in edges {
            b.add_edge(l, r)?;
        }
        Ok(b)
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn add_edge(&mut self, l: usize, r: usize) -> Result<(), GraphError> {
        self.add_weighted_edge(l, r, 0.0)
    }

    pub fn add_weighted_edge(&mut self, l: usize, r: usize, weight: f64) -> Result<(), GraphError> {
        if l >= self.left_count {
            return Err(GraphError::VertexOutOfRange {
                vertex: l,
                count: self.left_count,
            });
        }
        if r >= self.right_count {
            return Err(GraphError::VertexOutOfRange {
                vertex: r,
                count: self.right_count,
            });
        }
        let weight = check_weight(weight)?;
        self.edges
            .entry((l, r))
            .and_modify(|w| {
                if weight < *w {
                    *w = weight;
                }
            })
            .or_insert(weight);
        Ok(())
    }

    pub fn weight(&self, l: usize, r: usize) -> Option<f64> {
        self.edges.get(&(l, r)).copied()
    }

    /// Edges in lexicographic `(left, right)` order.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.edges.iter().map(|(&e, &w)| (e, w))
    }

    /// Adjacency of every left vertex as `(right, weight)`, sorted by right id.
    pub(crate) fn left_adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.left_count];
        for (&(l, r), &w) in &self.edges {
            adj[l].push((r, w));
        }
        adj
    }
}

/// A set of vertex-disjoint edges, sorted by left id.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
    pub total_weight: f64,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub(crate) fn from_mates(b: &BipartiteGraph, mate_of_left: &[Option<usize>]) -> Self {
        let mut pairs = Vec::new();
        let mut total_weight = 0.0;
        for (l, m) in mate_of_left.iter().enumerate() {
            if let Some(r) = *m {
                pairs.push((l, r));
                total_weight += b.weight(l, r).unwrap_or(0.0);
            }
        }
        Matching {
            pairs,
            total_weight,
        }
    }
}

/// Maximum-cardinality matching (Hopcroft-Karp).
pub fn max_bipartite_matching(b: &BipartiteGraph) -> Matching {
    let adj: Vec<Vec<usize>> = b
        .left_adjacency()
        .into_iter()
        .map(|row| row.into_iter().map(|(r, _)| r).collect())
        .collect();
    let mate_of_left = hopcroft_karp(&adj, b.right_count);
    Matching::from_mates(b, &mate_of_left)
}

pub(crate) fn hopcroft_karp(adj: &[Vec<usize>], right_count: usize) -> Vec<Option<usize>> {
    const INF: usize = usize::MAX;
    let n = adj.len();
    let mut mate_l: Vec<Option<usize>> = vec![None; n];
    let mut mate_r: Vec<Option<usize>> = vec![None; right_count];
    let mut dist = vec![INF; n];

    loop {
        // BFS layers from free left vertices.
        let mut queue = VecDeque::new();
        for l in 0..n {
            if mate_l[l].is_none() {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = INF;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                match mate_r[r] {
                    None => found = true,
                    Some(l2) if dist[l2] == INF => {
                        dist[l2] = dist[l] + 1;
                        queue.push_back(l2);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }

        // Vertex-disjoint shortest augmenting paths, iterative DFS.
        let mut it = vec![0usize; n];
        for start in 0..n {
            if mate_l[start].is_some() {
                continue;
            }
            let mut path: Vec<usize> = vec![start];
            while let Some(&l) = path.last() {
                if it[l] == adj[l].len() {
                    dist[l] = INF;
                    path.pop();
                    continue;
                }
                let r = adj[l][it[l]];
                it[l] += 1;
                match mate_r[r] {
                    None => {
                        // Augment along the path: each left vertex on the
                        // stack takes the right vertex it last advanced over.
                        let mut right = r;
                        while let Some(pl) = path.pop() {
                            let prev = mate_l[pl];
                            mate_l[pl] = Some(right);
                            mate_r[right] = Some(pl);
                            match prev {
                                Some(pr) => right = pr,
                                None => break,
                            }
                        }
                        break;
                    }
                    Some(l2) if dist[l2] != INF && dist[l2] == dist[l] + 1 => {
                        path.push(l2);
                    }
                    _ => {}
                }
            }
        }
    }
    mate_l
}
