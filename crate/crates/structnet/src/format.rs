//! JSON documents for instances, link overlays and undirected graphs.
//!
//! All indices are 0-based: subsystem `i`, state `q` within it. A neighbor
//! pair `[i, j]` allows links from states of subsystem `i` into states of
//! subsystem `j`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use structnet_core::model::{CompositeInstance, InterconnectionEdge, NeighborMap, StateRef};
use structnet_core::{ModelError, Subsystem};

use crate::CliError;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub version: String,
    pub subsystems: Vec<SubsystemDocument>,
    pub neighbors: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<WeightDocument>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modes: Option<Vec<Vec<[usize; 2]>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubsystemDocument {
    pub id: usize,
    pub state_dim: usize,
    pub input_dim: usize,
    pub a_nonzeros: Vec<[usize; 2]>,
    pub b_nonzeros: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightDocument {
    pub src: [usize; 2],
    pub dst: [usize; 2],
    pub cost: f64,
}

/// One link in an overlay file or command output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDocument {
    pub src: [usize; 2],
    pub dst: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<usize>,
}

/// Undirected graph for the reduction generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

fn state(s: [usize; 2]) -> StateRef {
    StateRef::new(s[0], s[1])
}

fn pair(s: StateRef) -> [usize; 2] {
    [s.subsystem, s.state]
}

impl From<&InterconnectionEdge> for EdgeDocument {
    fn from(e: &InterconnectionEdge) -> Self {
        EdgeDocument {
            src: pair(e.src),
            dst: pair(e.dst),
            mode: e.mode,
        }
    }
}

impl From<&EdgeDocument> for InterconnectionEdge {
    fn from(d: &EdgeDocument) -> Self {
        InterconnectionEdge {
            src: state(d.src),
            dst: state(d.dst),
            mode: d.mode,
        }
    }
}

fn pairs_to_map(k: usize, pairs: &[[usize; 2]]) -> Result<NeighborMap, ModelError> {
    structnet_core::model::neighbor_map_from_pairs(k, pairs.iter().map(|p| (p[0], p[1])))
}

fn map_to_pairs(map: &NeighborMap) -> Vec<[usize; 2]> {
    map.iter()
        .enumerate()
        .flat_map(|(i, outs)| outs.iter().map(move |&j| [i, j]))
        .collect()
}

impl InstanceDocument {
    /// Canonical document: nonzeros, pairs and weights sorted.
    pub fn from_instance(inst: &CompositeInstance) -> Self {
        let subsystems = inst
            .subsystems()
            .iter()
            .enumerate()
            .map(|(id, s)| SubsystemDocument {
                id,
                state_dim: s.state_dim(),
                input_dim: s.input_dim(),
                a_nonzeros: s.a_pattern().nonzeros().map(|(r, c)| [r, c]).collect(),
                b_nonzeros: s.b_pattern().nonzeros().map(|(r, c)| [r, c]).collect(),
            })
            .collect();
        let weights = inst.weights().map(|w| {
            w.iter()
                .map(|(&(src, dst), &cost)| WeightDocument {
                    src: pair(src),
                    dst: pair(dst),
                    cost,
                })
                .collect()
        });
        let modes = inst
            .modes()
            .map(|modes| modes.iter().map(map_to_pairs).collect());
        InstanceDocument {
            version: FORMAT_VERSION.to_string(),
            subsystems,
            neighbors: map_to_pairs(inst.neighbor_map()),
            weights,
            modes,
        }
    }

    pub fn to_instance(&self) -> Result<CompositeInstance, CliError> {
        if self.version != FORMAT_VERSION {
            return Err(CliError::Invalid(format!(
                "unsupported format version {:?} (expected {FORMAT_VERSION:?})",
                self.version
            )));
        }
        let mut subsystems = Vec::with_capacity(self.subsystems.len());
        for (pos, s) in self.subsystems.iter().enumerate() {
            if s.id != pos {
                return Err(CliError::Invalid(format!(
                    "subsystem at position {pos} has id {}; ids must be 0, 1, 2, ... in order",
                    s.id
                )));
            }
            let sub = Subsystem::from_entries(
                s.state_dim,
                s.input_dim,
                s.a_nonzeros.iter().map(|e| (e[0], e[1])),
                s.b_nonzeros.iter().map(|e| (e[0], e[1])),
            )
            .map_err(|e| CliError::Invalid(format!("subsystem {pos}: {e}")))?;
            subsystems.push(sub);
        }
        let k = subsystems.len();
        let neighbors = pairs_to_map(k, &self.neighbors)?;
        let mut inst = CompositeInstance::new(subsystems, neighbors)?;
        if let Some(modes) = &self.modes {
            let maps = modes
                .iter()
                .map(|m| pairs_to_map(k, m))
                .collect::<Result<Vec<_>, _>>()?;
            inst = inst.with_modes(maps)?;
        }
        if let Some(weights) = &self.weights {
            let mut w = BTreeMap::new();
            for d in weights {
                if w.insert((state(d.src), state(d.dst)), d.cost).is_some() {
                    return Err(CliError::Invalid(format!(
                        "duplicate weight for {:?} -> {:?}",
                        d.src, d.dst
                    )));
                }
            }
            inst = inst.with_weights(w)?;
        }
        Ok(inst)
    }
}

impl GraphDocument {
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let set: BTreeSet<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        set.into_iter().collect()
    }
}

pub fn parse_instance(text: &str) -> Result<InstanceDocument, serde_json::Error> {
    serde_json::from_str(text)
}

pub fn parse_edges(text: &str) -> Result<Vec<EdgeDocument>, serde_json::Error> {
    serde_json::from_str(text)
}

pub fn parse_graph(text: &str) -> Result<GraphDocument, serde_json::Error> {
    serde_json::from_str(text)
}

pub fn render<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use structnet_core::generate::four_subsystem_example;

    #[test]
    fn example_round_trips() {
        let inst = four_subsystem_example();
        let doc = InstanceDocument::from_instance(&inst);
        assert_eq!(doc.neighbors, vec![[0, 2], [1, 0], [2, 1], [2, 3]]);
        let back = parse_instance(&render(&doc)).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_instance().unwrap(), inst);
    }

    #[test]
    fn ids_must_be_positional() {
        let mut doc = InstanceDocument::from_instance(&four_subsystem_example());
        doc.subsystems.swap(0, 1);
        assert!(matches!(doc.to_instance(), Err(CliError::Invalid(_))));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"version":"1","subsystems":[],"neighbors":[],"extra":1}"#;
        assert!(parse_instance(text).is_err());
    }

    #[test]
    fn mode_tag_is_optional_in_overlays() {
        let e = parse_edges(r#"[{"src":[0,1],"dst":[2,2]},{"src":[0,0],"dst":[1,0],"mode":1}]"#)
            .unwrap();
        assert_eq!(e[0].mode, None);
        assert_eq!(e[1].mode, Some(1));
    }
}
