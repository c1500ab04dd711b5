//! End-to-end checks of the binary: exit codes, report shapes, and byte-stable
//! round trips of the emitted graph files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_graphax"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path
}

fn fano_json() -> &'static str {
    r#"{"points":["p1","p2","p3","p4","p5","p6","p7"],
        "lines":[["p1","p2","p3"],["p1","p4","p5"],["p1","p6","p7"],
                 ["p2","p4","p6"],["p2","p5","p7"],["p3","p4","p7"],["p3","p5","p6"]]}"#
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(
        dir.path(),
        "good.json",
        r#"{"field":{"kind":"Fp","p":5},"vertices":["x","y"],"edges":[["x","y","2"]]}"#,
    );
    let out = run(&["validate", "--in", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let looped = write(
        dir.path(),
        "loop.json",
        r#"{"field":{"kind":"Fp","p":5},"vertices":["x"],"edges":[["x","x","2"]]}"#,
    );
    let out = run(&["validate", "--in", looped.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let zero = write(
        dir.path(),
        "zero.json",
        r#"{"field":{"kind":"Q"},"vertices":["x","y"],"edges":[["x","y","0"]]}"#,
    );
    let out = run(&["validate", "--in", zero.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn incidence_then_aut_heawood() {
    let dir = tempfile::tempdir().unwrap();
    let fano = write(dir.path(), "fano.json", fano_json());
    let graph = dir.path().join("heawood.json");
    let dot = dir.path().join("heawood.dot");
    let out = run(&[
        "incidence",
        "--in",
        fano.to_str().unwrap(),
        "--field",
        "F7",
        "--alpha",
        "3",
        "--beta",
        "3",
        "--out",
        graph.to_str().unwrap(),
        "--emit-dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rendered = fs::read_to_string(&dot).unwrap();
    assert!(rendered.starts_with("digraph"));
    assert_eq!(rendered.matches("->").count(), 42);

    // round trip: the emitted file re-parses to a byte-identical emission
    let text = fs::read_to_string(&graph).unwrap();
    let parsed = graphax_core::graph::LabeledDigraph::from_json(&text).unwrap();
    assert_eq!(parsed.to_json(), text);

    let out = run(&["aut", "--in", graph.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["order"], "336");

    // distinct labels halve the group
    let graph2 = dir.path().join("heawood2.json");
    run(&[
        "incidence",
        "--in",
        fano.to_str().unwrap(),
        "--field",
        "F7",
        "--alpha",
        "3",
        "--beta",
        "5",
        "--out",
        graph2.to_str().unwrap(),
    ]);
    let out = run(&["aut", "--in", graph2.to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["order"], "168");

    // byte-stable across runs
    let again = dir.path().join("heawood_again.json");
    run(&[
        "incidence",
        "--in",
        fano.to_str().unwrap(),
        "--field",
        "F7",
        "--alpha",
        "3",
        "--beta",
        "3",
        "--out",
        again.to_str().unwrap(),
    ]);
    assert_eq!(fs::read(&graph).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn simplicity_verdict_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // complete graph on 5 vertices over Q with labels -1/3
    let mut edges = Vec::new();
    for i in 0..5 {
        for j in 0..5 {
            if i != j {
                edges.push(format!(r#"["v{i}","v{j}","-1/3"]"#));
            }
        }
    }
    let k5 = write(
        dir.path(),
        "k5.json",
        &format!(
            r#"{{"field":{{"kind":"Q"}},"vertices":["v0","v1","v2","v3","v4"],"edges":[{}]}}"#,
            edges.join(",")
        ),
    );
    let out = run(&["simplicity", "--in", k5.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"], "CompleteGraphCase");
    assert_eq!(report["theorem_case"], "1(b)");
    assert_eq!(report["ideal_bases"].as_array().unwrap().len(), 1);

    let simple = write(
        dir.path(),
        "edge.json",
        r#"{"field":{"kind":"Fp","p":5},"vertices":["x","y"],"edges":[["x","y","2"],["y","x","2"]]}"#,
    );
    let out = run(&["simplicity", "--in", simple.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn fusion_and_profile_on_heawood() {
    let dir = tempfile::tempdir().unwrap();
    let fano = write(dir.path(), "fano.json", fano_json());
    let graph = dir.path().join("heawood.json");
    run(&[
        "incidence",
        "--in",
        fano.to_str().unwrap(),
        "--field",
        "F7",
        "--alpha",
        "3",
        "--beta",
        "5",
        "--out",
        graph.to_str().unwrap(),
    ]);
    let out = run(&[
        "fusion",
        "--in",
        graph.to_str().unwrap(),
        "--law",
        "0,1,3,5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["law_satisfied"], true);

    // a law missing an incident eigenvalue is a usage error
    let out = run(&["fusion", "--in", graph.to_str().unwrap(), "--law", "0,1,3"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&[
        "profile",
        "--in",
        graph.to_str().unwrap(),
        "--format",
        "text",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("girth: 6"));
    assert!(text.contains("k_max: 3"));
}

#[test]
fn cayley_graph_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("z3.json");
    let out = run(&[
        "cayley",
        "--group",
        "z3",
        "--field",
        "F5",
        "--labels",
        "1=2",
        "--out",
        graph.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&graph).unwrap();
    let parsed = graphax_core::graph::LabeledDigraph::from_json(&text).unwrap();
    assert_eq!(parsed.vertex_count(), 3);
    assert_eq!(parsed.edge_count(), 3);
    assert_eq!(parsed.to_json(), text);

    // non-generating set
    let out = run(&[
        "cayley", "--group", "z4", "--field", "F5", "--labels", "2=2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quotient_of_planted_example() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(
        dir.path(),
        "planted.json",
        r#"{"field":{"kind":"Fp","p":5},
            "vertices":["x","y1","y2"],
            "edges":[["y1","y2","3"],["y2","y1","3"],
                     ["x","y1","2"],["x","y2","2"],
                     ["y1","x","4"],["y2","x","4"]]}"#,
    );
    let out = run(&["quotient", "--in", graph.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["matches_contraction"], true);
    assert_eq!(report["quotient_dimension"], 2);
    assert_eq!(report["subgraph"], serde_json::json!(["y1", "y2"]));

    // a non-ideal subgraph is a failed check
    let out = run(&[
        "quotient",
        "--in",
        graph.to_str().unwrap(),
        "--subgraph",
        "x,y1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn idempotents_and_recover_axes() {
    let dir = tempfile::tempdir().unwrap();
    let edge = write(
        dir.path(),
        "edge.json",
        r#"{"field":{"kind":"Fp","p":5},"vertices":["x","y"],"edges":[["x","y","2"],["y","x","2"]]}"#,
    );
    let out = run(&["idempotents", "--in", edge.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["count"], 3); // 0, x, y

    // K_4 incidence over F_2: the binary recovery criterion applies
    let k4 = write(
        dir.path(),
        "k4.json",
        r#"{"points":["v0","v1","v2","v3"],
            "lines":[["v0","v1"],["v0","v2"],["v0","v3"],["v1","v2"],["v1","v3"],["v2","v3"]]}"#,
    );
    let graph = dir.path().join("k4inc.json");
    run(&[
        "incidence",
        "--in",
        k4.to_str().unwrap(),
        "--field",
        "F2",
        "--alpha",
        "1",
        "--beta",
        "1",
        "--out",
        graph.to_str().unwrap(),
    ]);
    let out = run(&[
        "recover-axes",
        "--in",
        graph.to_str().unwrap(),
        "--origin",
        k4.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["theorem_applies"], true);
    assert_eq!(report["survivor_count"], 10);
    assert_eq!(report["exotic"].as_array().unwrap().len(), 0);

    // without the origin no criterion applies: exit 1, no claim
    let out = run(&["recover-axes", "--in", graph.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn frucht_pipeline_with_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("z2.json");
    let cert = dir.path().join("z2.cert.json");
    let delta = dir.path().join("z2.delta.json");
    let out = run(&[
        "frucht",
        "--group",
        "z2",
        "--field",
        "F5",
        "--scheme",
        "commutative:2",
        "--out",
        graph.to_str().unwrap(),
        "--cert",
        cert.to_str().unwrap(),
        "--emit-delta",
        delta.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );

    let text = fs::read_to_string(&graph).unwrap();
    let parsed = graphax_core::graph::LabeledDigraph::from_json(&text).unwrap();
    assert_eq!(parsed.to_json(), text);

    let cert: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(cert["verified"], true);
    assert_eq!(cert["aut_order"], "2");
    assert_eq!(cert["group_order"], 2);
    assert_eq!(cert["simplicity"]["verdict"], "Simple");
    assert!(cert["delta_min_degree"].as_u64().unwrap() >= 3);

    // the emitted structure re-parses as a partial linear space
    let raw: graphax_core::graph::RawPls =
        serde_json::from_str(&fs::read_to_string(&delta).unwrap()).unwrap();
    graphax_core::graph::PartialLinearSpace::from_raw(&raw).unwrap();

    // a commutative scheme over the two-element field cannot work
    let out = run(&[
        "frucht",
        "--group",
        "z2",
        "--field",
        "F2",
        "--scheme",
        "commutative:1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}
