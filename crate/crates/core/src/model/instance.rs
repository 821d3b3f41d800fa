use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use super::{ModelError, SparsityPattern};

/// A state `state` of subsystem `subsystem`, both 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateRef {
    pub subsystem: usize,
    pub state: usize,
}

impl StateRef {
    pub const fn new(subsystem: usize, state: usize) -> Self {
        StateRef { subsystem, state }
    }
}

impl fmt::Display for StateRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}.x{}", self.subsystem, self.state)
    }
}

/// Directed state-to-state link from `src` into `dst`.
///
/// It fills entry `(dst.state, src.state)` of the off-diagonal block
/// `(dst.subsystem, src.subsystem)` of the composite state matrix. `mode`
/// names the switching mode the link is established in, when relevant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InterconnectionEdge {
    pub src: StateRef,
    pub dst: StateRef,
    pub mode: Option<usize>,
}

impl InterconnectionEdge {
    pub const fn new(src: StateRef, dst: StateRef) -> Self {
        InterconnectionEdge {
            src,
            dst,
            mode: None,
        }
    }

    pub const fn in_mode(self, mode: usize) -> Self {
        InterconnectionEdge {
            mode: Some(mode),
            ..self
        }
    }

    /// The link without its mode tag.
    pub const fn key(&self) -> (StateRef, StateRef) {
        (self.src, self.dst)
    }
}

impl fmt::Display for InterconnectionEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.src, self.dst)?;
        if let Some(m) = self.mode {
            write!(f, " [mode {m}]")?;
        }
        Ok(())
    }
}

/// A structured subsystem `(Ā, B̄)`. `input_dim` may be 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subsystem {
    a: SparsityPattern,
    b: SparsityPattern,
}

impl Subsystem {
    pub fn new(a: SparsityPattern, b: SparsityPattern) -> Result<Self, ModelError> {
        if !a.is_square() || a.rows() == 0 {
            return Err(ModelError::BadStatePattern {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        if b.rows() != a.rows() {
            return Err(ModelError::InputRowMismatch {
                states: a.rows(),
                rows: b.rows(),
            });
        }
        Ok(Subsystem { a, b })
    }

    /// Convenience constructor from nonzero positions.
    pub fn from_entries<A, B>(
        state_dim: usize,
        input_dim: usize,
        a_entries: A,
        b_entries: B,
    ) -> Result<Self, ModelError>
    where
        A: IntoIterator<Item = (usize, usize)>,
        B: IntoIterator<Item = (usize, usize)>,
    {
        Subsystem::new(
            SparsityPattern::from_entries(state_dim, state_dim, a_entries)?,
            SparsityPattern::from_entries(state_dim, input_dim, b_entries)?,
        )
    }

    pub fn state_dim(&self) -> usize {
        self.a.rows()
    }

    pub fn input_dim(&self) -> usize {
        self.b.cols()
    }

    pub fn a_pattern(&self) -> &SparsityPattern {
        &self.a
    }

    pub fn b_pattern(&self) -> &SparsityPattern {
        &self.b
    }
}

pub type NeighborMap = Vec<BTreeSet<usize>>;

/// Subsystems plus the constraint on which of them may exchange state.
///
/// `neighbors[i]` is the out-neighbor set of subsystem `i`: `j` in
/// `neighbors[i]` permits links from states of `i` into states of `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeInstance {
    subsystems: Vec<Subsystem>,
    neighbors: NeighborMap,
    weights: Option<BTreeMap<(StateRef, StateRef), f64>>,
    modes: Option<Vec<NeighborMap>>,
    state_offsets: Vec<usize>,
    input_offsets: Vec<usize>,
}

impl CompositeInstance {
    pub fn new(subsystems: Vec<Subsystem>, neighbors: NeighborMap) -> Result<Self, ModelError> {
        validate_neighbor_map(subsystems.len(), &neighbors)?;
        let mut state_offsets = Vec::with_capacity(subsystems.len() + 1);
        let mut input_offsets = Vec::with_capacity(subsystems.len() + 1);
        let (mut ns, mut ni) = (0, 0);
        for s in &subsystems {
            state_offsets.push(ns);
            input_offsets.push(ni);
            ns += s.state_dim();
            ni += s.input_dim();
        }
        state_offsets.push(ns);
        input_offsets.push(ni);
        Ok(CompositeInstance {
            subsystems,
            neighbors,
            weights: None,
            modes: None,
            state_offsets,
            input_offsets,
        })
    }

    /// Builds the neighbor map from `(i, j)` pairs meaning `j ∈ N(i)`.
    pub fn from_neighbor_pairs<I>(subsystems: Vec<Subsystem>, pairs: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let k = subsystems.len();
        let neighbors = neighbor_map_from_pairs(k, pairs)?;
        CompositeInstance::new(subsystems, neighbors)
    }

    /// Attaches interconnection costs. Every candidate link must be priced
    /// and every price must be finite and positive.
    pub fn with_weights(
        mut self,
        weights: BTreeMap<(StateRef, StateRef), f64>,
    ) -> Result<Self, ModelError> {
        for (&(src, dst), &w) in &weights {
            let edge = InterconnectionEdge::new(src, dst);
            if !self.is_admissible(&edge) {
                return Err(ModelError::WeightNotCandidate(edge));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(ModelError::InvalidWeight { edge, value: w });
            }
        }
        if let Some(missing) = self
            .candidate_edges()
            .into_iter()
            .find(|e| !weights.contains_key(&e.key()))
        {
            return Err(ModelError::MissingWeight(missing));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    /// Attaches per-mode neighbor maps. Their union must equal the flat
    /// neighbor map.
    pub fn with_modes(mut self, modes: Vec<NeighborMap>) -> Result<Self, ModelError> {
        let k = self.subsystems.len();
        if modes.is_empty() {
            return Err(ModelError::NoModes);
        }
        let mut union: NeighborMap = alloc::vec![BTreeSet::new(); k];
        for map in &modes {
            validate_neighbor_map(k, map)?;
            for (i, set) in map.iter().enumerate() {
                union[i].extend(set.iter().copied());
            }
        }
        if union != self.neighbors {
            return Err(ModelError::ModeUnionMismatch);
        }
        self.modes = Some(modes);
        Ok(self)
    }

    pub fn without_weights(mut self) -> Self {
        self.weights = None;
        self
    }

    pub fn without_modes(mut self) -> Self {
        self.modes = None;
        self
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn subsystem_count(&self) -> usize {
        self.subsystems.len()
    }

    pub fn neighbor_map(&self) -> &NeighborMap {
        &self.neighbors
    }

    pub fn neighbors(&self, i: usize) -> &BTreeSet<usize> {
        &self.neighbors[i]
    }

    pub fn weights(&self) -> Option<&BTreeMap<(StateRef, StateRef), f64>> {
        self.weights.as_ref()
    }

    pub fn modes(&self) -> Option<&[NeighborMap]> {
        self.modes.as_deref()
    }

    /// Total state dimension `n_T`.
    pub fn state_count(&self) -> usize {
        self.state_offsets[self.subsystems.len()]
    }

    /// Total input dimension `m_T`.
    pub fn input_count(&self) -> usize {
        self.input_offsets[self.subsystems.len()]
    }

    pub fn state_offset(&self, i: usize) -> usize {
        self.state_offsets[i]
    }

    pub fn input_offset(&self, i: usize) -> usize {
        self.input_offsets[i]
    }

    /// Index of a state in the composite state vector.
    pub fn global_state(&self, s: StateRef) -> usize {
        self.state_offsets[s.subsystem] + s.state
    }

    /// Inverse of [`global_state`](Self::global_state).
    pub fn locate(&self, global: usize) -> StateRef {
        let i = self.state_offsets.partition_point(|&o| o <= global) - 1;
        StateRef::new(i, global - self.state_offsets[i])
    }

    fn state_in_range(&self, s: StateRef) -> bool {
        s.subsystem < self.subsystems.len() && s.state < self.subsystems[s.subsystem].state_dim()
    }

    /// Whether the link respects the neighbor constraint (per mode when the
    /// edge carries one).
    pub fn is_admissible(&self, e: &InterconnectionEdge) -> bool {
        if !self.state_in_range(e.src) || !self.state_in_range(e.dst) {
            return false;
        }
        if e.src.subsystem == e.dst.subsystem {
            return false;
        }
        match e.mode {
            None => self.neighbors[e.src.subsystem].contains(&e.dst.subsystem),
            Some(m) => self
                .modes
                .as_ref()
                .and_then(|modes| modes.get(m))
                .is_some_and(|map| map[e.src.subsystem].contains(&e.dst.subsystem)),
        }
    }

    /// Every admissible link, sorted by `(src, dst)`.
    pub fn candidate_edges(&self) -> Vec<InterconnectionEdge> {
        let mut out = Vec::new();
        for (i, outs) in self.neighbors.iter().enumerate() {
            for q in 0..self.subsystems[i].state_dim() {
                for &j in outs {
                    for p in 0..self.subsystems[j].state_dim() {
                        out.push(InterconnectionEdge::new(
                            StateRef::new(i, q),
                            StateRef::new(j, p),
                        ));
                    }
                }
            }
        }
        out
    }

    pub fn candidate_count(&self) -> usize {
        self.neighbors
            .iter()
            .enumerate()
            .map(|(i, outs)| {
                self.subsystems[i].state_dim()
                    * outs
                        .iter()
                        .map(|&j| self.subsystems[j].state_dim())
                        .sum::<usize>()
            })
            .sum()
    }

    /// Cost of a link: its weight when weights are attached, 1 otherwise.
    pub fn edge_cost(&self, e: &InterconnectionEdge) -> f64 {
        self.weights
            .as_ref()
            .and_then(|w| w.get(&e.key()).copied())
            .unwrap_or(1.0)
    }
}

pub(crate) fn validate_neighbor_map(k: usize, map: &NeighborMap) -> Result<(), ModelError> {
    if map.len() != k {
        return Err(ModelError::NeighborMapLength {
            expected: k,
            found: map.len(),
        });
    }
    for (i, outs) in map.iter().enumerate() {
        for &j in outs {
            if j >= k {
                return Err(ModelError::NeighborOutOfRange { from: i, to: j });
            }
            if j == i {
                return Err(ModelError::SelfNeighbor(i));
            }
        }
    }
    Ok(())
}

pub fn neighbor_map_from_pairs<I>(k: usize, pairs: I) -> Result<NeighborMap, ModelError>
where
    I: IntoIterator<Item = (usize, usize)>,
{
    let mut neighbors: NeighborMap = alloc::vec![BTreeSet::new(); k];
    for (i, j) in pairs {
        if i >= k || j >= k {
            return Err(ModelError::NeighborOutOfRange { from: i, to: j });
        }
        neighbors[i].insert(j);
    }
    validate_neighbor_map(k, &neighbors)?;
    Ok(neighbors)
}
