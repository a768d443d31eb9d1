//! End-to-end checks of the `gis` binary: the documented invocations,
//! exit-status conventions, and the machine-readable report formats.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

fn gis() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gis"))
}

fn write_g1(dir: &tempfile::TempDir) -> PathBuf {
    let path = dir.path().join("g1.json");
    std::fs::write(
        &path,
        r#"{
  "vertices": ["v1", "v2"],
  "edges": [
    { "id": "e", "src": "v1", "dst": "v2" },
    { "id": "f", "src": "v1", "dst": "v2" }
  ]
}"#,
    )
    .unwrap();
    path
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).trim().to_string()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).to_string()
}

#[test]
fn multiplies_elements() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = write_g1(&dir);
    let out = gis()
        .args(["mul", "--graph"])
        .arg(&g1)
        .args(["e f^-1", "f e^-1"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "e e^-1");
}

#[test]
fn embeds_elements() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = write_g1(&dir);
    let out = gis()
        .args(["embed", "--graph"])
        .arg(&g1)
        .arg("e f^-1")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), "[0 2][0 3]^-1");

    let out = gis()
        .args(["embed", "--p2", "--graph"])
        .arg(&g1)
        .arg("v1")
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "[0][0]^-1");
}

#[test]
fn reduce_and_invert_round_trip_printed_elements() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = write_g1(&dir);
    for expression in ["e f^-1", "v2", "e^-1", "0", "e e^-1 e"] {
        let printed = stdout(
            &gis()
                .args(["reduce", "--graph"])
                .arg(&g1)
                .arg(expression)
                .output()
                .unwrap(),
        );
        let reprinted = stdout(
            &gis()
                .args(["reduce", "--graph"])
                .arg(&g1)
                .arg(&printed)
                .output()
                .unwrap(),
        );
        assert_eq!(printed, reprinted, "for input `{expression}`");
    }

    let inverted = stdout(
        &gis()
            .args(["invert", "--graph"])
            .arg(&g1)
            .arg("e f^-1")
            .output()
            .unwrap(),
    );
    assert_eq!(inverted, "f e^-1");
}

#[test]
fn poly_reduce_normalizes_letter_words() {
    let cases = [
        ("p0^-1 p0", "[][]^-1"),
        ("p0 p1 p1^-1 p0^-1", "[0 1][0 1]^-1"),
        ("p0^-1 p1", "0"),
        ("", "[][]^-1"),
    ];
    for (word, expected) in cases {
        let out = gis()
            .args(["poly", "reduce", "--arity", "2", word])
            .output()
            .unwrap();
        assert!(out.status.success());
        assert_eq!(stdout(&out), expected, "for word `{word}`");
    }

    let out = gis()
        .args(["poly", "reduce", "--arity", "2", "p7"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lists_paths() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = write_g1(&dir);
    let out = gis()
        .args(["paths", "--max-len", "1", "--graph"])
        .arg(&g1)
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "v1\nv2\ne\nf");

    let out = gis()
        .args(["paths", "--max-len", "1", "--format", "json", "--graph"])
        .arg(&g1)
        .output()
        .unwrap();
    let listed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(listed.as_array().unwrap().len(), 4);
    assert_eq!(listed[2]["range"], "v2");
    assert_eq!(listed[2]["length"], 1);
}

#[test]
fn input_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = write_g1(&dir);

    // Malformed inverse suffix.
    let out = gis()
        .args(["mul", "--graph"])
        .arg(&g1)
        .args(["e^-2", "e"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("e^-2"));

    // Unknown identifier, reported by name.
    let out = gis()
        .args(["reduce", "--graph"])
        .arg(&g1)
        .arg("nope")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("nope"));

    // Broken graph file.
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{ "vertices": ["v1"], "edges": [{ "id": "e", "src": "v1", "dst": "v9" }] }"#,
    )
    .unwrap();
    let out = gis()
        .args(["paths", "--max-len", "1", "--graph"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("v9"));

    // Malformed builtin.
    let out = gis()
        .args(["paths", "--max-len", "1", "--builtin", "torus:3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Missing graph for a graph-bound suite.
    let out = gis().args(["verify", "axioms"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Degenerate truncation window.
    let out = gis()
        .args(["verify", "topology", "--trunc", "0", "--builtin", "rose:2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_subcommands_report_json() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = write_g1(&dir);
    let out = gis()
        .args([
            "verify",
            "embedding",
            "--max-len",
            "2",
            "--format",
            "json",
            "--graph",
        ])
        .arg(&g1)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["status"], "pass");
    let report = &doc["reports"][0];
    assert_eq!(report["type"], "embedding");
    assert_eq!(report["graph"], "g1");
    assert_eq!(report["arity"], 4);
    assert_eq!(report["bound"], 2);
    for case in ["1", "2", "3", "4"] {
        assert!(report["case_histogram"][case].as_u64().unwrap() > 0);
    }
    assert!(report["pairs_checked"].as_u64().unwrap() > 0);
    assert_eq!(report["status"], "pass");
    assert!(report.get("counterexample").is_none());
}

#[test]
fn confluence_suite_needs_no_graph_and_honors_seed() {
    let out = gis()
        .args(["verify", "confluence", "--seed", "123", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["status"], "pass");
}

#[test]
fn verify_all_passes_on_the_standard_graphs_within_budget() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = write_g1(&dir);
    let start = Instant::now();

    let out = gis()
        .args([
            "verify",
            "all",
            "--max-len",
            "3",
            "--format",
            "json",
            "--graph",
        ])
        .arg(&g1)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["status"], "pass");

    for builtin in ["rose:2", "ladder:4"] {
        let out = gis()
            .args(["verify", "all", "--max-len", "3", "--builtin", builtin])
            .output()
            .unwrap();
        assert!(out.status.success(), "{builtin}: {}", stderr(&out));
    }

    let elapsed = start.elapsed();
    println!("verify all on the three standard graphs: {elapsed:.2?}");
    assert!(
        elapsed < Duration::from_secs(60),
        "verify all took {elapsed:?}"
    );
}

#[test]
fn ladder_builtin_appends_the_counterexample_suite() {
    let out = gis()
        .args([
            "verify",
            "topology",
            "--builtin",
            "ladder:3",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let reports = doc["reports"].as_array().unwrap();
    let ladder_report = reports
        .iter()
        .find(|r| {
            r["filter"]
                .as_str()
                .is_some_and(|f| f.starts_with("ladder:3 filter"))
        })
        .expect("ladder counterexample report present");
    assert!(ladder_report["truncation"].as_u64().is_some());
    let names: Vec<&str> = ladder_report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"no_ideal_base_reported"));
}
