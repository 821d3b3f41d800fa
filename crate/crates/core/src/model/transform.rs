use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{CompositeInstance, ModelError, NeighborMap, StateRef, Subsystem};

fn reverse_map(map: &NeighborMap) -> NeighborMap {
    let mut rev: NeighborMap = alloc::vec![BTreeSet::new(); map.len()];
    for (i, outs) in map.iter().enumerate() {
        for &j in outs {
            rev[j].insert(i);
        }
    }
    rev
}

/// Transposed instance for the observability problem.
///
/// Each state pattern is transposed and the neighbor relation reversed. The
/// `b` pattern is kept as-is and read as the transposed sensing pattern
/// `C̄ᵀ`, so designing controllability interconnections on the result and
/// reversing the returned links solves the observability problem.
pub fn dual_observability_instance(inst: &CompositeInstance) -> CompositeInstance {
    let subsystems: Vec<Subsystem> = inst
        .subsystems()
        .iter()
        .map(|s| {
            Subsystem::new(s.a_pattern().transpose(), s.b_pattern().clone())
                .expect("transpose keeps a square state pattern")
        })
        .collect();
    let mut out = CompositeInstance::new(subsystems, reverse_map(inst.neighbor_map()))
        .expect("reversed neighbor map stays valid");
    if let Some(w) = inst.weights() {
        let flipped: BTreeMap<(StateRef, StateRef), f64> =
            w.iter().map(|(&(s, d), &c)| ((d, s), c)).collect();
        out = out
            .with_weights(flipped)
            .expect("reversed weights cover reversed candidates");
    }
    if let Some(modes) = inst.modes() {
        out = out
            .with_modes(modes.iter().map(reverse_map).collect())
            .expect("reversed modes union to reversed neighbors");
    }
    out
}

/// Single-mode instance over the union of all mode neighbor maps, with the
/// modes that admit each `(source subsystem, target subsystem)` class.
#[derive(Debug, Clone, PartialEq)]
pub struct UnionInstance {
    pub instance: CompositeInstance,
    pub class_modes: BTreeMap<(usize, usize), BTreeSet<usize>>,
}

impl UnionInstance {
    /// Smallest mode admitting links from subsystem `src` into `dst`.
    pub fn first_mode(&self, src: usize, dst: usize) -> Option<usize> {
        self.class_modes
            .get(&(src, dst))
            .and_then(|m| m.iter().next().copied())
    }
}

pub fn union_instance(inst: &CompositeInstance) -> Result<UnionInstance, ModelError> {
    let modes = inst.modes().ok_or(ModelError::NoModes)?;
    let mut class_modes: BTreeMap<(usize, usize), BTreeSet<usize>> = BTreeMap::new();
    for (m, map) in modes.iter().enumerate() {
        for (i, outs) in map.iter().enumerate() {
            for &j in outs {
                class_modes.entry((i, j)).or_default().insert(m);
            }
        }
    }
    // with_modes already guarantees the flat map is the union
    Ok(UnionInstance {
        instance: inst.clone().without_modes(),
        class_modes,
    })
}
