use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn germkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_germkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = path(dir, name);
    std::fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn chain_json() -> &'static str {
    r#"{"elements": ["0", "e", "1"], "table": [[0, 0, 0], [0, 1, 1], [0, 1, 2]], "zero": 0, "one": 2}"#
}

#[test]
fn gen_and_verify_symmetric() {
    let dir = TempDir::new().unwrap();
    let file = path(&dir, "i2.json");
    assert_eq!(
        germkit(&["gen", "symmetric", "2", &file]).status.code(),
        Some(0)
    );
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(doc["elements"].as_array().unwrap().len(), 7);

    let out = germkit(&["verify", &file, "--suite", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.starts_with("germkit "));
    assert!(text.contains("elements: 7\n"));
    assert!(text.contains("|S| = 7, |Γ_c| = 7"));
    assert!(text.contains("result: PASS"));
    assert!(!text.contains("timings"));
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn each_suite_runs() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "i2.json", r#"{"points": 2}"#);
    for suite in ["axioms", "lemmas", "roundtrip", "all"] {
        let out = germkit(&["verify", &file, "--suite", suite]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "suite {suite}: {}",
            stdout(&out)
        );
    }
}

#[test]
fn gen_coarse_matches_block_count() {
    let dir = TempDir::new().unwrap();
    let space = write(&dir, "space.json", r#"{"points": 3, "edges": [[0, 1]]}"#);
    let file = path(&dir, "te.json");
    assert_eq!(
        germkit(&["gen", "coarse", &space, &file]).status.code(),
        Some(0)
    );
    let out = germkit(&["verify", &file]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("elements: 14\n"));

    let metric = write(
        &dir,
        "metric.json",
        r#"{"points": 2, "dist": [[0, 5], [5, 0]], "radius": 1}"#,
    );
    let file = path(&dir, "discrete.json");
    assert_eq!(
        germkit(&["gen", "coarse", &metric, &file]).status.code(),
        Some(0)
    );
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(doc["elements"].as_array().unwrap().len(), 4);
}

#[test]
fn chain_is_rejected_with_witness() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "chain.json", chain_json());
    let json = path(&dir, "report.json");
    let out = germkit(&["verify", &file, "--suite", "axioms", "--json-report", &json]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("[FAIL]"));
    assert!(text.contains("result: FAIL"));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["passed"], false);
    let witnesses: Vec<&str> = report["reports"][0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(|c| c["witness"].as_str())
        .collect();
    assert!(
        witnesses.iter().any(|w| w.contains("complement")),
        "{witnesses:?}"
    );
}

#[test]
fn non_inverse_table_is_a_verification_failure() {
    let dir = TempDir::new().unwrap();
    // a and b form a left-zero band, so the idempotents do not commute
    let file = write(
        &dir,
        "bad.json",
        r#"{"elements": ["0", "a", "b", "1"], "table": [[0,0,0,0],[0,1,1,1],[0,2,2,2],[0,1,2,3]], "zero": 0, "one": 3}"#,
    );
    let out = germkit(&["verify", &file]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).contains("Input monoid"));
}

#[test]
fn export_formats() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "i2.json", r#"{"points": 2}"#);

    let dot = path(&dir, "g.dot");
    assert_eq!(
        germkit(&["export", &file, "--format", "dot", &dot])
            .status
            .code(),
        Some(0)
    );
    let dot = std::fs::read_to_string(dot).unwrap();
    assert!(dot.starts_with("digraph germs {"));
    assert_eq!(dot.matches(" -> ").count(), 4);

    let json = path(&dir, "g.json");
    assert_eq!(
        germkit(&["export", &file, "--format", "json", &json])
            .status
            .code(),
        Some(0)
    );
    let g: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(g["units"].as_array().unwrap().len(), 2);
    assert_eq!(g["arrows"].as_array().unwrap().len(), 4);
    // composable pairs of the pair groupoid on 2 points
    assert_eq!(g["composition"].as_array().unwrap().len(), 8);

    let atoms = path(&dir, "atoms.json");
    assert_eq!(
        germkit(&["export", &file, "--format", "atoms", &atoms])
            .status
            .code(),
        Some(0)
    );
    let a: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(atoms).unwrap()).unwrap();
    assert_eq!(a["characters"], 2);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let missing = path(&dir, "missing.json");
    assert_eq!(germkit(&["verify", &missing]).status.code(), Some(3));
    let garbage = write(&dir, "garbage.json", "{ not json");
    assert_eq!(germkit(&["verify", &garbage]).status.code(), Some(3));
    assert_eq!(germkit(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(
        germkit(&["verify", &garbage, "--suite", "nope"])
            .status
            .code(),
        Some(3)
    );

    let out = path(&dir, "big.json");
    assert_eq!(
        germkit(&["gen", "symmetric", "9", &out]).status.code(),
        Some(2)
    );
    assert!(!Path::new(&out).exists());
    let i3 = write(&dir, "i3.json", r#"{"points": 3}"#);
    assert_eq!(
        germkit(&["--cap-elements", "10", "verify", &i3])
            .status
            .code(),
        Some(2)
    );
    let env = Command::new(env!("CARGO_BIN_EXE_germkit"))
        .env("GERMKIT_CAP_ELEMENTS", "10")
        .args(["verify", &i3])
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(2));

    assert_eq!(germkit(&["--version"]).status.code(), Some(0));
}

#[test]
fn round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    let a = path(&dir, "a.json");
    assert_eq!(
        germkit(&["gen", "symmetric", "3", &a]).status.code(),
        Some(0)
    );
    let text = std::fs::read_to_string(&a).unwrap();
    // a generated file is a valid table file that regenerates identically
    let b = write(&dir, "b.json", &text);
    let out_a = germkit(&["verify", &a, "--suite", "roundtrip"]);
    let out_b = germkit(&["verify", &b, "--suite", "roundtrip"]);
    assert_eq!(out_a.status.code(), Some(0));
    let strip = |o: &Output| {
        stdout(o)
            .lines()
            .filter(|l| !l.starts_with("command:"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&out_a), strip(&out_b));
}
