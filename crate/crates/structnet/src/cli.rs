use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use structnet_core::designer::{design_switched_with, design_with, CostModel, DesignError};
use structnet_core::generate::{
    random_instance, random_modes, random_weights, reduction_instance, RandomParams,
};
use structnet_core::model::{check_instance, CompositeInstance, InterconnectionEdge};
use structnet_core::oracle::{exact_min_interconnections, OracleConfig, OracleError};

use crate::dot::{self, View};
use crate::format::{self, InstanceDocument};
use crate::report::{CheckOutput, DesignOutput, InfeasibleOutput, OracleOutput};
use crate::{CliError, Output, EXIT_NEGATIVE, EXIT_OK};

/// Design minimum-cost interconnections that make a composite of
/// structured subsystems structurally controllable.
#[derive(Debug, Parser)]
#[command(name = "structnet", version)]
pub struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    pub pretty: bool,
    /// JSON output (the default).
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test structural controllability, optionally with a set of links.
    Check {
        instance: PathBuf,
        /// Link overlay file.
        #[arg(long)]
        edges: Option<PathBuf>,
    },
    /// Run the two-stage design.
    Design {
        instance: PathBuf,
        #[command(flatten)]
        costs: CostArgs,
        /// Design on the union of the modes and tag each link with a mode.
        #[arg(long)]
        switched: bool,
        /// Directory to write stage DOT files into.
        #[arg(long, value_name = "DIR")]
        emit_dot: Option<PathBuf>,
    },
    /// Exact minimum by exhaustive search.
    Oracle {
        instance: PathBuf,
        #[command(flatten)]
        costs: CostArgs,
        /// Only ask whether a solution of at most this cost exists.
        #[arg(long)]
        budget: Option<f64>,
        /// Also run the designer and report its ratio to the optimum.
        #[arg(long)]
        compare: bool,
        #[arg(long, default_value_t = 24)]
        max_candidates: usize,
    },
    /// Hamiltonian-path reduction instance for an undirected graph file.
    GenReduction {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        leader: usize,
    },
    /// Seeded random instance.
    GenRandom {
        #[arg(long, default_value_t = 4)]
        subsystems: usize,
        #[arg(long, default_value_t = 1)]
        min_states: usize,
        #[arg(long, default_value_t = 3)]
        max_states: usize,
        #[arg(long, default_value_t = 0)]
        min_inputs: usize,
        #[arg(long, default_value_t = 1)]
        max_inputs: usize,
        /// Probability of each neighbor pair.
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        /// Probability of each pattern nonzero.
        #[arg(long, default_value_t = 0.3)]
        pattern_density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Attach random link costs in [1, 5].
        #[arg(long)]
        weighted: bool,
        /// Spread the neighbor pairs over this many modes.
        #[arg(long)]
        modes: Option<usize>,
    },
    /// DOT rendering of an instance.
    ExportDot {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "digraph")]
        view: View,
        /// Link overlay file to highlight.
        #[arg(long)]
        edges: Option<PathBuf>,
        #[command(flatten)]
        costs: CostArgs,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct CostArgs {
    /// Price links by the instance weights.
    #[arg(long)]
    pub weighted: bool,
}

impl CostArgs {
    fn model(self) -> CostModel {
        if self.weighted {
            CostModel::Weighted
        } else {
            CostModel::Cardinality
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_err(path: &Path) -> impl FnOnce(serde_json::Error) -> CliError + '_ {
    move |source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    }
}

pub fn load_instance(path: &Path) -> Result<CompositeInstance, CliError> {
    let doc = format::parse_instance(&read(path)?).map_err(parse_err(path))?;
    doc.to_instance()
}

pub fn load_edges(path: &Path) -> Result<Vec<InterconnectionEdge>, CliError> {
    let docs = format::parse_edges(&read(path)?).map_err(parse_err(path))?;
    Ok(docs.iter().map(InterconnectionEdge::from).collect())
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

struct Render {
    pretty: bool,
}

impl Render {
    fn emit<T: Serialize>(
        &self,
        value: &T,
        pretty: impl FnOnce(&T) -> String,
        code: i32,
    ) -> Output {
        let stdout = if self.pretty {
            pretty(value)
        } else {
            format::render(value)
        };
        Output { stdout, code }
    }
}

pub fn run(cli: Cli) -> Result<Output, CliError> {
    let r = Render {
        pretty: cli.pretty && !cli.json,
    };
    match cli.command {
        Command::Check { instance, edges } => {
            let inst = load_instance(&instance)?;
            let links = match edges {
                Some(p) => load_edges(&p)?,
                None => Vec::new(),
            };
            let report = check_instance(&inst, &links)?;
            let out = CheckOutput::new(&inst, links.len(), &report);
            let code = if report.controllable {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            };
            Ok(r.emit(&out, CheckOutput::pretty, code))
        }
        Command::Design {
            instance,
            costs,
            switched,
            emit_dot,
        } => {
            let inst = load_instance(&instance)?;
            let result = if switched {
                design_switched_with(&inst, costs.model())
            } else {
                design_with(&inst, costs.model())
            };
            match result {
                Ok(d) => {
                    if let Some(dir) = emit_dot {
                        fs::create_dir_all(&dir).map_err(|source| CliError::Io {
                            path: dir.clone(),
                            source,
                        })?;
                        write(
                            &dir.join("stage1_bipartite.dot"),
                            &dot::bipartite(&inst, &d.stage1_edges, costs.model()),
                        )?;
                        write(
                            &dir.join("condensation.dot"),
                            &dot::condensation(&inst, &d.stage2_edges, costs.model()),
                        )?;
                        write(
                            &dir.join("composite.dot"),
                            &dot::digraph(&inst, &d.union_edges),
                        )?;
                    }
                    Ok(r.emit(
                        &DesignOutput::new(&d, switched),
                        DesignOutput::pretty,
                        EXIT_OK,
                    ))
                }
                Err(DesignError::Infeasible {
                    inaccessible,
                    matching_deficiency,
                }) => {
                    let out = InfeasibleOutput::new(&inaccessible, matching_deficiency);
                    Ok(r.emit(&out, InfeasibleOutput::pretty, EXIT_NEGATIVE))
                }
                Err(DesignError::Model(e)) => Err(e.into()),
                Err(e) => Err(CliError::Invalid(e.to_string())),
            }
        }
        Command::Oracle {
            instance,
            costs,
            budget,
            compare,
            max_candidates,
        } => {
            let inst = load_instance(&instance)?;
            let cfg = OracleConfig {
                max_candidates,
                cost_model: costs.model(),
                budget,
            };
            let res = match exact_min_interconnections(&inst, &cfg) {
                Ok(res) => res,
                Err(OracleError::Infeasible) => {
                    let all = inst.candidate_edges();
                    let full = check_instance(&inst, &all)?;
                    let inaccessible: Vec<_> = full
                        .inaccessible_states
                        .iter()
                        .map(|&g| inst.locate(g))
                        .collect();
                    let out = InfeasibleOutput::new(&inaccessible, full.matching_deficiency());
                    return Ok(r.emit(&out, InfeasibleOutput::pretty, EXIT_NEGATIVE));
                }
                Err(e) => return Err(CliError::Oracle(e)),
            };
            let designed = if compare {
                Some(
                    design_with(&inst, costs.model())
                        .map_err(|e| CliError::Invalid(e.to_string()))?,
                )
            } else {
                None
            };
            let out = OracleOutput::new(&res, costs.model(), designed.as_ref());
            let code = if res.answer == Some(false) {
                EXIT_NEGATIVE
            } else {
                EXIT_OK
            };
            Ok(r.emit(&out, OracleOutput::pretty, code))
        }
        Command::GenReduction { graph, leader } => {
            let g = format::parse_graph(&read(&graph)?).map_err(parse_err(&graph))?;
            let inst = reduction_instance(g.vertices, &g.edge_pairs(), leader)?;
            Ok(document(&inst))
        }
        Command::GenRandom {
            subsystems,
            min_states,
            max_states,
            min_inputs,
            max_inputs,
            density,
            pattern_density,
            seed,
            weighted,
            modes,
        } => {
            let mut inst = random_instance(&RandomParams {
                subsystems,
                state_dim: (min_states, max_states),
                input_dim: (min_inputs, max_inputs),
                neighbor_density: density,
                pattern_density,
                seed,
            })?;
            if weighted {
                inst = random_weights(inst, 1.0, 5.0, seed)?;
            }
            if let Some(m) = modes {
                inst = random_modes(inst, m, seed)?;
            }
            Ok(document(&inst))
        }
        Command::ExportDot {
            instance,
            view,
            edges,
            costs,
        } => {
            let inst = load_instance(&instance)?;
            let links = match edges {
                Some(p) => load_edges(&p)?,
                None => Vec::new(),
            };
            for e in &links {
                if !inst.is_admissible(e) {
                    return Err(structnet_core::ModelError::InadmissibleEdge(*e).into());
                }
            }
            Ok(Output {
                stdout: dot::render_view(&inst, view, &links, costs.model()),
                code: EXIT_OK,
            })
        }
    }
}

/// Generated instances are always printed as documents.
fn document(inst: &CompositeInstance) -> Output {
    Output {
        stdout: format::render(&InstanceDocument::from_instance(inst)),
        code: EXIT_OK,
    }
}
