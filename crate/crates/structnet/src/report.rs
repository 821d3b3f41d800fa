//! Serializable command results and their human renderings.

use std::fmt::Write;

use serde::Serialize;
use structnet_core::designer::{CostModel, DesignResult};
use structnet_core::model::{CompositeInstance, InterconnectionEdge, StateRef};
use structnet_core::oracle::OracleResult;
use structnet_core::ControllabilityReport;

use crate::format::EdgeDocument;

fn cost_model_name(c: CostModel) -> &'static str {
    match c {
        CostModel::Cardinality => "cardinality",
        CostModel::Weighted => "weighted",
    }
}

fn edges(list: &[InterconnectionEdge]) -> Vec<EdgeDocument> {
    list.iter().map(EdgeDocument::from).collect()
}

fn state_pairs(list: &[StateRef]) -> Vec<[usize; 2]> {
    list.iter().map(|s| [s.subsystem, s.state]).collect()
}

fn num(x: f64) -> String {
    if x.fract() == 0.0 {
        format!("{x:.0}")
    } else {
        format!("{x:.4}")
    }
}

fn edge_lines(out: &mut String, list: &[EdgeDocument]) {
    for e in list {
        let mode = e.mode.map(|m| format!("  (mode {m})")).unwrap_or_default();
        writeln!(
            out,
            "  S{}.x{} -> S{}.x{}{mode}",
            e.src[0], e.src[1], e.dst[0], e.dst[1]
        )
        .unwrap();
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutput {
    pub controllable: bool,
    pub accessible: bool,
    pub dilation_free: bool,
    pub state_count: usize,
    pub link_count: usize,
    pub matching_size: usize,
    pub matching_deficiency: usize,
    pub inaccessible_states: Vec<[usize; 2]>,
}

impl CheckOutput {
    pub fn new(inst: &CompositeInstance, links: usize, r: &ControllabilityReport) -> Self {
        let inaccessible: Vec<StateRef> = r
            .inaccessible_states
            .iter()
            .map(|&g| inst.locate(g))
            .collect();
        CheckOutput {
            controllable: r.controllable,
            accessible: r.accessible,
            dilation_free: r.dilation_free,
            state_count: r.state_count,
            link_count: links,
            matching_size: r.matching_size,
            matching_deficiency: r.matching_deficiency(),
            inaccessible_states: state_pairs(&inaccessible),
        }
    }

    pub fn pretty(&self) -> String {
        let mut out = String::new();
        let verdict = if self.controllable { "yes" } else { "no" };
        writeln!(out, "structurally controllable: {verdict}").unwrap();
        writeln!(
            out,
            "states: {}, links: {}",
            self.state_count, self.link_count
        )
        .unwrap();
        if self.inaccessible_states.is_empty() {
            out.push_str("every state is accessible\n");
        } else {
            let names: Vec<String> = self
                .inaccessible_states
                .iter()
                .map(|s| format!("S{}.x{}", s[0], s[1]))
                .collect();
            writeln!(out, "inaccessible states: {}", names.join(" ")).unwrap();
        }
        writeln!(out, "matching deficiency: {}", self.matching_deficiency).unwrap();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesignOutput {
    pub cost_model: &'static str,
    pub switched: bool,
    pub link_count: usize,
    pub union_edges: Vec<EdgeDocument>,
    pub stage1_edges: Vec<EdgeDocument>,
    pub stage2_edges: Vec<EdgeDocument>,
    pub stage1_cost: f64,
    pub stage2_cost: f64,
    pub union_cost: f64,
    pub lower_bound: f64,
    pub ratio_bound: f64,
}

impl DesignOutput {
    pub fn new(r: &DesignResult, switched: bool) -> Self {
        DesignOutput {
            cost_model: cost_model_name(r.cost_model),
            switched,
            link_count: r.union_edges.len(),
            union_edges: edges(&r.union_edges),
            stage1_edges: edges(&r.stage1_edges),
            stage2_edges: edges(&r.stage2_edges),
            stage1_cost: r.stage1_cost,
            stage2_cost: r.stage2_cost,
            union_cost: r.union_cost,
            lower_bound: r.lower_bound,
            ratio_bound: r.ratio_bound,
        }
    }

    pub fn pretty(&self) -> String {
        let mut out = String::new();
        if self.link_count == 0 {
            out.push_str("0 interconnections needed\n");
        } else {
            writeln!(out, "{} interconnections:", self.link_count).unwrap();
            edge_lines(&mut out, &self.union_edges);
        }
        writeln!(out, "stage 1 (no dilation) cost: {}", num(self.stage1_cost)).unwrap();
        writeln!(
            out,
            "stage 2 (accessibility) cost: {}",
            num(self.stage2_cost)
        )
        .unwrap();
        writeln!(out, "total cost: {}", num(self.union_cost)).unwrap();
        writeln!(out, "lower bound on optimum: {}", num(self.lower_bound)).unwrap();
        writeln!(out, "ratio bound: {}", num(self.ratio_bound)).unwrap();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfeasibleOutput {
    pub error: &'static str,
    pub inaccessible_states: Vec<[usize; 2]>,
    pub matching_deficiency: usize,
}

impl InfeasibleOutput {
    pub fn new(inaccessible: &[StateRef], matching_deficiency: usize) -> Self {
        InfeasibleOutput {
            error: "infeasible",
            inaccessible_states: state_pairs(inaccessible),
            matching_deficiency,
        }
    }

    pub fn pretty(&self) -> String {
        let mut out = String::from(
            "infeasible: no admissible interconnections make the system controllable\n",
        );
        if !self.inaccessible_states.is_empty() {
            let names: Vec<String> = self
                .inaccessible_states
                .iter()
                .map(|s| format!("S{}.x{}", s[0], s[1]))
                .collect();
            writeln!(out, "never accessible: {}", names.join(" ")).unwrap();
        }
        writeln!(out, "matching deficiency: {}", self.matching_deficiency).unwrap();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub designer_cost: f64,
    pub designer_link_count: usize,
    /// Designer cost over the optimum (1 when both are 0).
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleOutput {
    pub cost_model: &'static str,
    pub optimum_cost: Option<f64>,
    pub optimum_edges: Vec<EdgeDocument>,
    pub explored: u64,
    pub budget: Option<f64>,
    pub answer: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
}

impl OracleOutput {
    pub fn new(r: &OracleResult, costs: CostModel, designed: Option<&DesignResult>) -> Self {
        let comparison = match (designed, r.optimum_cost) {
            (Some(d), Some(opt)) => Some(Comparison {
                designer_cost: d.union_cost,
                designer_link_count: d.union_edges.len(),
                ratio: if opt > 0.0 { d.union_cost / opt } else { 1.0 },
            }),
            _ => None,
        };
        OracleOutput {
            cost_model: cost_model_name(costs),
            optimum_cost: r.optimum_cost,
            optimum_edges: edges(&r.optimum_edges),
            explored: r.explored,
            budget: r.budget,
            answer: r.answer,
            comparison,
        }
    }

    pub fn pretty(&self) -> String {
        let mut out = String::new();
        if let (Some(b), Some(a)) = (self.budget, self.answer) {
            let yes = if a { "yes" } else { "no" };
            writeln!(out, "solution with cost <= {}: {yes}", num(b)).unwrap();
        }
        match self.optimum_cost {
            Some(c) => {
                writeln!(out, "minimum cost: {}", num(c)).unwrap();
                writeln!(out, "witness ({} links):", self.optimum_edges.len()).unwrap();
                edge_lines(&mut out, &self.optimum_edges);
            }
            None => out.push_str("no solution within the budget\n"),
        }
        writeln!(out, "subsets explored: {}", self.explored).unwrap();
        if let Some(c) = &self.comparison {
            writeln!(
                out,
                "designer: cost {} ({} links), ratio to optimum {}",
                num(c.designer_cost),
                c.designer_link_count,
                num(c.ratio)
            )
            .unwrap();
        }
        out
    }
}
