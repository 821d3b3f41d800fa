//! Graph kernels used by the model and the designer.
//!
//! Vertices are dense `usize` ids. Every routine is a pure function of its
//! input and resolves ties deterministically, so repeated calls return
//! identical results.

mod arborescence;
mod assignment;
mod bipartite;
mod digraph;

pub use arborescence::{min_spanning_arborescence, Arborescence};
pub use assignment::min_weight_perfect_matching;
pub use bipartite::{max_bipartite_matching, BipartiteGraph, Matching};
pub use digraph::{reachable_from, strongly_connected_components, DiGraph};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("edge weight {0} is not a finite non-negative number")]
    InvalidWeight(f64),
    #[error("no matching saturates every left vertex")]
    NoPerfectMatching,
    #[error("vertex {0} is not reachable from the root")]
    NotSpannable(usize),
    #[error("left side ({left}) is larger than right side ({right})")]
    LeftLargerThanRight { left: usize, right: usize },
}

pub(crate) fn check_weight(w: f64) -> Result<f64, GraphError> {
    if w.is_finite() && w >= 0.0 {
        Ok(w)
    } else {
        Err(GraphError::InvalidWeight(w))
    }
}
