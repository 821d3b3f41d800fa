use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use structnet::format::{parse_instance, render, InstanceDocument, WeightDocument};
use structnet_core::design;
use structnet_core::generate::four_subsystem_example;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_structnet"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("stdout is JSON")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_without_links_lists_inaccessible_subsystems() {
    let inst = data("four_subsystems.json");
    let (code, out, _) = run(&["check", path_str(&inst)]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v["controllable"], false);
    let subsystems: Vec<u64> = v["inaccessible_states"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s[0].as_u64().unwrap())
        .collect();
    assert_eq!(subsystems, vec![1, 1, 2, 2, 2, 3, 3]);
}

#[test]
fn check_with_five_links_passes() {
    let (code, out, _) = run(&[
        "check",
        path_str(&data("four_subsystems.json")),
        "--edges",
        path_str(&data("four_subsystems_links.json")),
    ]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(json(&out)["controllable"], true);
}

#[test]
fn malformed_file_is_a_parse_error() {
    let (code, out, err) = run(&["check", path_str(&data("malformed.json"))]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line"), "{err}");
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let (code, _, _) = run(&["design", "--frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn design_matches_library() {
    let (code, out, _) = run(&["design", path_str(&data("four_subsystems.json"))]);
    assert_eq!(code, 0);
    let v = json(&out);
    let lib = design(&four_subsystem_example()).unwrap();
    assert_eq!(v["link_count"], 5);
    assert_eq!(v["stage1_cost"], 2.0);
    assert_eq!(v["stage2_cost"], 3.0);
    assert_eq!(v["lower_bound"], lib.lower_bound);
    assert_eq!(v["ratio_bound"], lib.ratio_bound);
    let edges: Vec<[u64; 4]> = v["union_edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            [
                e["src"][0].as_u64().unwrap(),
                e["src"][1].as_u64().unwrap(),
                e["dst"][0].as_u64().unwrap(),
                e["dst"][1].as_u64().unwrap(),
            ]
        })
        .collect();
    let expected: Vec<[u64; 4]> = lib
        .union_edges
        .iter()
        .map(|e| {
            [
                e.src.subsystem as u64,
                e.src.state as u64,
                e.dst.subsystem as u64,
                e.dst.state as u64,
            ]
        })
        .collect();
    assert_eq!(edges, expected);
}

#[test]
fn design_pretty_on_controllable_instance() {
    let (code, out, _) = run(&["design", "--pretty", path_str(&data("controllable.json"))]);
    assert_eq!(code, 0);
    assert!(out.starts_with("0 interconnections needed"), "{out}");
}

#[test]
fn weighted_design_avoids_the_expensive_realizer() {
    let dir = tempfile::tempdir().unwrap();
    let inst = four_subsystem_example();
    let mut doc = InstanceDocument::from_instance(&inst);
    doc.weights = Some(
        inst.candidate_edges()
            .iter()
            .map(|e| WeightDocument {
                src: [e.src.subsystem, e.src.state],
                dst: [e.dst.subsystem, e.dst.state],
                cost: if (e.src.subsystem, e.src.state, e.dst.subsystem, e.dst.state)
                    == (0, 0, 2, 0)
                {
                    5.0
                } else {
                    1.0
                },
            })
            .collect(),
    );
    let file = dir.path().join("weighted.json");
    std::fs::write(&file, render(&doc)).unwrap();

    let (code, out, _) = run(&["design", "--weighted", path_str(&file)]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["cost_model"], "weighted");
    assert_eq!(v["union_cost"], 5.0);
    let dear = serde_json::json!({"src": [0, 0], "dst": [2, 0]});
    let next = serde_json::json!({"src": [0, 0], "dst": [2, 1]});
    let stage2 = v["stage2_edges"].as_array().unwrap();
    assert!(!stage2.contains(&dear));
    assert!(stage2.contains(&next));

    let (_, plain, _) = run(&["design", path_str(&file)]);
    let plain = json(&plain);
    assert!(plain["stage2_edges"].as_array().unwrap().contains(&dear));
}

#[test]
fn design_emits_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run(&[
        "design",
        path_str(&data("four_subsystems.json")),
        "--emit-dot",
        path_str(dir.path()),
    ]);
    assert_eq!(code, 0);
    for f in ["stage1_bipartite.dot", "condensation.dot", "composite.dot"] {
        let text = std::fs::read_to_string(dir.path().join(f)).unwrap();
        assert!(text.starts_with("digraph"), "{f}");
    }
}

#[test]
fn oracle_reports_optimum_and_comparison() {
    let (code, out, _) = run(&[
        "oracle",
        path_str(&data("four_subsystems.json")),
        "--max-candidates",
        "30",
        "--compare",
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["optimum_cost"], 3.0);
    assert_eq!(v["comparison"]["designer_cost"], 5.0);
}

#[test]
fn oracle_refuses_oversized_instances() {
    let (code, _, err) = run(&["oracle", path_str(&data("four_subsystems.json"))]);
    assert_eq!(code, 2);
    assert!(err.contains("27"), "{err}");
}

#[test]
fn reduction_budget_decisions() {
    let dir = tempfile::tempdir().unwrap();
    let (code, doc, _) = run(&[
        "gen-reduction",
        path_str(&data("path3.json")),
        "--leader",
        "0",
    ]);
    assert_eq!(code, 0);
    let file = dir.path().join("p3.json");
    std::fs::write(&file, &doc).unwrap();

    let (code, out, _) = run(&[
        "oracle",
        path_str(&file),
        "--max-candidates",
        "100",
        "--budget",
        "1",
    ]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["answer"], false);

    let (code, out, _) = run(&[
        "--pretty",
        "oracle",
        path_str(&file),
        "--max-candidates",
        "100",
        "--budget",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("yes"), "{out}");
}

#[test]
fn reduction_rejects_disconnected_graph() {
    let (code, _, err) = run(&["gen-reduction", path_str(&data("disconnected.json"))]);
    assert_eq!(code, 2);
    assert!(err.contains("disconnected"), "{err}");
}

#[test]
fn gen_random_is_reproducible_and_valid() {
    let args = [
        "gen-random",
        "--subsystems",
        "4",
        "--max-states",
        "3",
        "--seed",
        "7",
    ];
    let (c1, a, _) = run(&args);
    let (c2, b, _) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    parse_instance(&a).unwrap().to_instance().unwrap();
}

#[test]
fn gen_random_full_density_is_complete() {
    let (_, out, _) = run(&["gen-random", "--subsystems", "5", "--density", "1"]);
    let doc = parse_instance(&out).unwrap();
    assert_eq!(doc.neighbors.len(), 20);
}

#[test]
fn gen_random_with_weights_and_modes_round_trips() {
    let (_, out, _) = run(&[
        "gen-random",
        "--weighted",
        "--modes",
        "2",
        "--density",
        "0.8",
    ]);
    let doc = parse_instance(&out).unwrap();
    assert!(doc.weights.is_some());
    assert_eq!(doc.modes.as_ref().unwrap().len(), 2);
    let inst = doc.to_instance().unwrap();
    assert_eq!(InstanceDocument::from_instance(&inst), doc);
}

#[test]
fn switched_design_tags_modes() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = InstanceDocument::from_instance(&four_subsystem_example());
    doc.modes = Some(vec![vec![[0, 2], [2, 1]], vec![[1, 0], [2, 3]]]);
    let file = dir.path().join("switched.json");
    std::fs::write(&file, render(&doc)).unwrap();
    let (code, out, _) = run(&["design", "--switched", path_str(&file)]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["link_count"], 5);
    for e in v["union_edges"].as_array().unwrap() {
        let expected = match (e["src"][0].as_u64(), e["dst"][0].as_u64()) {
            (Some(0), Some(2)) | (Some(2), Some(1)) => 0,
            _ => 1,
        };
        assert_eq!(e["mode"], expected);
    }
}

#[test]
fn export_dot_views() {
    let inst = data("four_subsystems.json");
    let (code, dot, _) = run(&["export-dot", path_str(&inst)]);
    assert_eq!(code, 0);
    assert_eq!(dot.matches("subgraph cluster_").count(), 4);
    assert_eq!(dot.matches("shape=box").count(), 1);
    assert!(!dot.contains("dashed"));

    let (_, with_links, _) = run(&[
        "export-dot",
        path_str(&inst),
        "--edges",
        path_str(&data("four_subsystems_links.json")),
    ]);
    assert_eq!(with_links.matches("style=dashed").count(), 5);

    let (_, cond, _) = run(&["export-dot", path_str(&inst), "--view", "condensation"]);
    let nodes = cond.lines().filter(|l| l.contains("[label=\"N")).count();
    assert_eq!(nodes + 1, 8);

    let (_, again, _) = run(&["export-dot", path_str(&inst), "--view", "bipartite"]);
    let (_, twice, _) = run(&["export-dot", path_str(&inst), "--view", "bipartite"]);
    assert_eq!(again, twice);
}
