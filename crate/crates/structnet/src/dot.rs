//! Graphviz DOT views of an instance.

use std::collections::BTreeSet;
use std::fmt::Write;

use structnet_core::designer::{build_condensation, build_stage1_bipartite, CostModel};
use structnet_core::model::{CompositeInstance, InterconnectionEdge};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum View {
    /// State digraph with subsystem clusters and inputs.
    Digraph,
    /// Row/column bipartite graph used by the matching stage.
    Bipartite,
    /// Subsystem SCCs and the master input.
    Condensation,
}

pub fn render_view(
    inst: &CompositeInstance,
    view: View,
    links: &[InterconnectionEdge],
    costs: CostModel,
) -> String {
    match view {
        View::Digraph => digraph(inst, links),
        View::Bipartite => bipartite(inst, links, costs),
        View::Condensation => condensation(inst, links, costs),
    }
}

fn fmt_cost(w: f64) -> String {
    if w.fract() == 0.0 {
        format!("{w:.0}")
    } else {
        format!("{w}")
    }
}

/// Subsystem clusters; links are drawn dashed.
pub fn digraph(inst: &CompositeInstance, links: &[InterconnectionEdge]) -> String {
    let mut out = String::from("digraph composite {\n  rankdir=LR;\n");
    for (i, s) in inst.subsystems().iter().enumerate() {
        writeln!(out, "  subgraph cluster_{i} {{").unwrap();
        writeln!(out, "    label=\"S{i}\";").unwrap();
        for q in 0..s.input_dim() {
            writeln!(out, "    u{i}_{q} [label=\"u{q}\", shape=box];").unwrap();
        }
        for q in 0..s.state_dim() {
            writeln!(out, "    s{i}_{q} [label=\"x{q}\", shape=circle];").unwrap();
        }
        for (p, q) in s.b_pattern().nonzeros() {
            writeln!(out, "    u{i}_{q} -> s{i}_{p};").unwrap();
        }
        for (p, q) in s.a_pattern().nonzeros() {
            writeln!(out, "    s{i}_{q} -> s{i}_{p};").unwrap();
        }
        out.push_str("  }\n");
    }
    for e in links {
        let label = e
            .mode
            .map(|m| format!(", label=\"m{m}\""))
            .unwrap_or_default();
        writeln!(
            out,
            "  s{}_{} -> s{}_{} [style=dashed, color=red{label}];",
            e.src.subsystem, e.src.state, e.dst.subsystem, e.dst.state
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Rows on the left, state then input columns on the right. Priced link
/// edges are dashed and labelled; edges behind `links` are bold.
pub fn bipartite(
    inst: &CompositeInstance,
    links: &[InterconnectionEdge],
    costs: CostModel,
) -> String {
    let g = build_stage1_bipartite(inst, costs);
    let n = inst.state_count();
    let chosen: BTreeSet<(usize, usize)> = links
        .iter()
        .map(|e| (inst.global_state(e.dst), inst.global_state(e.src)))
        .collect();
    let col_name = |r: usize| {
        if r < n {
            let s = inst.locate(r);
            (format!("c{r}"), format!("S{}.x{}", s.subsystem, s.state))
        } else {
            (format!("c{r}"), format!("u{}", r - n))
        }
    };
    let mut out = String::from(
        "digraph stage1 {\n  rankdir=LR;\n  subgraph cluster_rows {\n    label=\"rows\";\n",
    );
    for l in 0..n {
        let s = inst.locate(l);
        writeln!(out, "    r{l} [label=\"S{}.x{}'\"];", s.subsystem, s.state).unwrap();
    }
    out.push_str("  }\n  subgraph cluster_cols {\n    label=\"columns\";\n");
    for r in 0..g.graph.right_count() {
        let (id, label) = col_name(r);
        writeln!(out, "    {id} [label=\"{label}\"];").unwrap();
    }
    out.push_str("  }\n");
    for ((l, r), w) in g.graph.edges() {
        let mut attrs = Vec::new();
        if g.interconnections.contains_key(&(l, r)) {
            attrs.push("style=dashed".to_string());
            attrs.push(format!("label=\"{}\"", fmt_cost(w)));
        }
        if chosen.contains(&(l, r)) {
            attrs.push("penwidth=3".to_string());
            attrs.push("color=red".to_string());
        }
        attrs.push("arrowhead=none".to_string());
        writeln!(out, "  r{l} -> c{r} [{}];", attrs.join(", ")).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Master input `u` and components `N1..`; cross arcs dashed, input arcs
/// red, arcs realized by `links` bold.
pub fn condensation(
    inst: &CompositeInstance,
    links: &[InterconnectionEdge],
    costs: CostModel,
) -> String {
    let c = build_condensation(inst, costs);
    let chosen: BTreeSet<(usize, usize)> = links
        .iter()
        .map(|e| (c.vertex_of(e.src), c.vertex_of(e.dst)))
        .collect();
    let mut out = String::from("digraph condensation {\n  u [shape=box];\n");
    for (g, node) in c.scc_nodes.iter().enumerate() {
        let states: Vec<String> = node.states.iter().map(|q| format!("x{q}")).collect();
        writeln!(
            out,
            "  N{} [label=\"N{}\\nS{}: {}\"];",
            g + 1,
            g + 1,
            node.subsystem,
            states.join(" ")
        )
        .unwrap();
    }
    let name = |v: usize| {
        if v == 0 {
            "u".to_string()
        } else {
            format!("N{v}")
        }
    };
    for &(u, v) in &c.input {
        writeln!(out, "  {} -> {} [color=red];", name(u), name(v)).unwrap();
    }
    for &(u, v) in &c.intra {
        writeln!(out, "  {} -> {};", name(u), name(v)).unwrap();
    }
    for &arc in c.cross.keys() {
        let w = c.cross_cost(inst, arc).expect("cross arc has a link");
        let bold = if chosen.contains(&arc) {
            ", penwidth=3, color=blue"
        } else {
            ""
        };
        writeln!(
            out,
            "  {} -> {} [style=dashed, label=\"{}\"{bold}];",
            name(arc.0),
            name(arc.1),
            fmt_cost(w)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
