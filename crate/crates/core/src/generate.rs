//! Instance generators: seeded random composites, the Hamiltonian-path
//! reduction family, and a small hand-built example.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{CompositeInstance, NeighborMap, StateRef, Subsystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("edge ({0}, {1}) is out of range or a self-loop")]
    BadEdge(usize, usize),
    #[error("leader {leader} out of range for {count} vertices")]
    LeaderOutOfRange { leader: usize, count: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("bad parameters: {0}")]
    BadParams(&'static str),
}

/// Four subsystems with a single input; needs five links under the two-stage
/// design, and three is the optimum.
pub fn four_subsystem_example() -> CompositeInstance {
    let subsystems = vec![
        Subsystem::from_entries(3, 1, [(1, 0), (2, 0), (2, 2)], [(0, 0)]).unwrap(),
        Subsystem::from_entries(2, 0, [(0, 1), (1, 0)], []).unwrap(),
        Subsystem::from_entries(3, 0, [(0, 1), (1, 0), (1, 2), (2, 1)], []).unwrap(),
        Subsystem::from_entries(2, 0, [(1, 0)], []).unwrap(),
    ];
    CompositeInstance::from_neighbor_pairs(subsystems, [(0, 2), (1, 0), (2, 1), (2, 3)]).unwrap()
}

/// Reduction instance for an undirected graph on `vertex_count` vertices.
///
/// Every vertex becomes a three-state path subsystem whose middle state
/// drives both ends; only `leader` has an input, on its first state. Each
/// graph edge allows links both ways. The minimum number of links is
/// `vertex_count - 1` for some leader exactly when the graph has a
/// Hamiltonian path.
pub fn reduction_instance(
    vertex_count: usize,
    edges: &[(usize, usize)],
    leader: usize,
) -> Result<CompositeInstance, GenerateError> {
    if vertex_count == 0 {
        return Err(GenerateError::EmptyGraph);
    }
    if leader >= vertex_count {
        return Err(GenerateError::LeaderOutOfRange {
            leader,
            count: vertex_count,
        });
    }
    let mut neighbors: NeighborMap = vec![BTreeSet::new(); vertex_count];
    for &(u, v) in edges {
        if u >= vertex_count || v >= vertex_count || u == v {
            return Err(GenerateError::BadEdge(u, v));
        }
        neighbors[u].insert(v);
        neighbors[v].insert(u);
    }
    let mut seen = vec![false; vertex_count];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &neighbors[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(GenerateError::Disconnected);
    }

    let path = [(0, 1), (1, 0), (1, 2), (2, 1)];
    let subsystems = (0..vertex_count)
        .map(|v| {
            if v == leader {
                Subsystem::from_entries(3, 1, path, [(0, 0)])
            } else {
                Subsystem::from_entries(3, 0, path, [])
            }
            .expect("fixed pattern is valid")
        })
        .collect();
    Ok(CompositeInstance::new(subsystems, neighbors).expect("neighbor map checked above"))
}

/// Knobs for [`random_instance`].
#[derive(Debug, Clone, PartialEq)]
pub struct RandomParams {
    pub subsystems: usize,
    /// Inclusive range of state dimensions.
    pub state_dim: (usize, usize),
    /// Inclusive range of input dimensions.
    pub input_dim: (usize, usize),
    /// Probability that `j` is an out-neighbor of `i`.
    pub neighbor_density: f64,
    /// Probability of each nonzero in `Ā_i` and `B̄_i`.
    pub pattern_density: f64,
    pub seed: u64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            subsystems: 4,
            state_dim: (1, 3),
            input_dim: (0, 1),
            neighbor_density: 0.4,
            pattern_density: 0.3,
            seed: 0,
        }
    }
}

impl RandomParams {
    fn check(&self) -> Result<(), GenerateError> {
        if self.subsystems == 0 {
            return Err(GenerateError::BadParams("need at least one subsystem"));
        }
        if self.state_dim.0 == 0 || self.state_dim.0 > self.state_dim.1 {
            return Err(GenerateError::BadParams(
                "state_dim must be a nonempty range >= 1",
            ));
        }
        if self.input_dim.0 > self.input_dim.1 {
            return Err(GenerateError::BadParams(
                "input_dim must be a nonempty range",
            ));
        }
        let ok = |p: f64| (0.0..=1.0).contains(&p);
        if !ok(self.neighbor_density) || !ok(self.pattern_density) {
            return Err(GenerateError::BadParams("densities must lie in [0, 1]"));
        }
        Ok(())
    }
}

/// Seeded random composite. At least one subsystem has an input with a
/// nonzero entry, so the instance is never trivially input-free.
pub fn random_instance(params: &RandomParams) -> Result<CompositeInstance, GenerateError> {
    params.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let k = params.subsystems;
    let mut subsystems = Vec::with_capacity(k);
    for _ in 0..k {
        let n = rng.gen_range(params.state_dim.0..=params.state_dim.1);
        let m = rng.gen_range(params.input_dim.0..=params.input_dim.1);
        let mut a = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if rng.gen_bool(params.pattern_density) {
                    a.push((p, q));
                }
            }
        }
        let mut b = Vec::new();
        for p in 0..n {
            for q in 0..m {
                if rng.gen_bool(params.pattern_density) {
                    b.push((p, q));
                }
            }
        }
        subsystems.push((n, m, a, b));
    }
    if !subsystems.iter().any(|s| !s.3.is_empty()) {
        let i = rng.gen_range(0..k);
        let s = &mut subsystems[i];
        if s.1 == 0 {
            s.1 = 1;
        }
        let p = rng.gen_range(0..s.0);
        s.3.push((p, 0));
    }
    let subsystems = subsystems
        .into_iter()
        .map(|(n, m, a, b)| Subsystem::from_entries(n, m, a, b).expect("entries in range"))
        .collect();

    let mut neighbors: NeighborMap = vec![BTreeSet::new(); k];
    for (i, outs) in neighbors.iter_mut().enumerate() {
        for j in 0..k {
            if j != i && rng.gen_bool(params.neighbor_density) {
                outs.insert(j);
            }
        }
    }
    Ok(CompositeInstance::new(subsystems, neighbors).expect("generated map is valid"))
}

/// Attaches a uniformly random cost in `[low, high]` to every candidate link.
pub fn random_weights(
    inst: CompositeInstance,
    low: f64,
    high: f64,
    seed: u64,
) -> Result<CompositeInstance, GenerateError> {
    if !(low > 0.0 && low <= high && high.is_finite()) {
        return Err(GenerateError::BadParams("need 0 < low <= high < inf"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w: BTreeMap<(StateRef, StateRef), f64> = inst
        .candidate_edges()
        .into_iter()
        .map(|e| {
            let c = if low == high {
                low
            } else {
                rng.gen_range(low..=high)
            };
            (e.key(), c)
        })
        .collect();
    Ok(inst.with_weights(w).expect("weights cover every candidate"))
}

/// Spreads the neighbor pairs over `mode_count` modes. Every pair lands in
/// at least one mode, so the modes union back to the original relation.
pub fn random_modes(
    inst: CompositeInstance,
    mode_count: usize,
    seed: u64,
) -> Result<CompositeInstance, GenerateError> {
    if mode_count == 0 {
        return Err(GenerateError::BadParams("need at least one mode"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = inst.subsystem_count();
    let mut modes: Vec<NeighborMap> = vec![vec![BTreeSet::new(); k]; mode_count];
    let all: Vec<usize> = (0..mode_count).collect();
    for (i, outs) in inst.neighbor_map().iter().enumerate() {
        for &j in outs {
            let home = *all.choose(&mut rng).expect("at least one mode");
            modes[home][i].insert(j);
            for (m, mode) in modes.iter_mut().enumerate() {
                if m != home && rng.gen_bool(0.3) {
                    mode[i].insert(j);
                }
            }
        }
    }
    Ok(inst
        .with_modes(modes)
        .expect("modes union to the neighbor map"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_rejects_bad_graphs() {
        assert_eq!(
            reduction_instance(3, &[(0, 1)], 0),
            Err(GenerateError::Disconnected)
        );
        assert_eq!(
            reduction_instance(0, &[], 0),
            Err(GenerateError::EmptyGraph)
        );
        assert_eq!(
            reduction_instance(2, &[(0, 0)], 0),
            Err(GenerateError::BadEdge(0, 0))
        );
        assert!(matches!(
            reduction_instance(2, &[(0, 1)], 5),
            Err(GenerateError::LeaderOutOfRange { .. })
        ));
    }

    #[test]
    fn reduction_shape() {
        let inst = reduction_instance(3, &[(0, 1), (1, 2)], 1).unwrap();
        assert_eq!(inst.state_count(), 9);
        assert_eq!(inst.input_count(), 1);
        assert_eq!(inst.subsystems()[1].input_dim(), 1);
        assert!(inst.neighbors(1).contains(&0) && inst.neighbors(0).contains(&1));
    }

    #[test]
    fn random_instance_is_deterministic_and_has_an_input() {
        for seed in 0..50 {
            let p = RandomParams {
                seed,
                pattern_density: 0.0,
                ..RandomParams::default()
            };
            let a = random_instance(&p).unwrap();
            assert_eq!(a, random_instance(&p).unwrap());
            assert!(a.subsystems().iter().any(|s| !s.b_pattern().is_zero()));
        }
    }

    #[test]
    fn random_modes_union_back() {
        let inst = random_instance(&RandomParams {
            neighbor_density: 0.8,
            ..RandomParams::default()
        })
        .unwrap();
        let moded = random_modes(inst.clone(), 3, 7).unwrap();
        assert_eq!(moded.neighbor_map(), inst.neighbor_map());
        assert_eq!(moded.modes().unwrap().len(), 3);
    }

    #[test]
    fn random_weights_cover_candidates() {
        let inst = random_weights(four_subsystem_example(), 1.0, 3.0, 1).unwrap();
        let w = inst.weights().unwrap();
        assert_eq!(w.len(), inst.candidate_count());
        assert!(w.values().all(|&c| (1.0..=3.0).contains(&c)));
    }
}
