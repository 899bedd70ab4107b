use std::path::Path;
use std::process::{Command, Output};

use voltlift::graph::{complete_graph, GraphJson, UniversalCoefficients};
use voltlift::voltage::VoltageGraphJson;
use voltlift::{direct_spectrum, token_graph};

fn voltlift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_voltlift"))
        .args(args)
        .env_remove("VOLTLIFT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn csv_count(csv: &str) -> usize {
    csv.lines()
        .skip(1)
        .take_while(|l| !l.is_empty())
        .map(|l| l.rsplit(',').next().unwrap().parse::<usize>().unwrap())
        .sum()
}

#[test]
fn generate_token_and_base() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("j52.json");
    let dot = dir.path().join("j52.dot");
    let o = voltlift(&[
        "generate",
        "token",
        "--complete",
        "5",
        "--k",
        "2",
        "--out",
        path(&out),
        "--dot",
        path(&dot),
    ]);
    assert_eq!(code(&o), 0);
    let g: GraphJson = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(g.vertices.len(), 10);
    assert!(g.undirected);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph"));

    let o = voltlift(&["generate", "base", "--johnson", "7", "2"]);
    assert_eq!(code(&o), 0);
    let base: VoltageGraphJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(base.vertices.len(), 3);

    let o = voltlift(&["generate", "cayley", "--group", "Z3xZ3", "--gens", "10,01"]);
    let g: GraphJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(g.vertices.len(), 9);
    assert_eq!(g.arcs.len(), 36);
}

#[test]
fn lift_of_a_base_file() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("base.json");
    assert_eq!(
        code(&voltlift(&[
            "generate",
            "base",
            "--johnson",
            "5",
            "2",
            "--out",
            path(&base)
        ])),
        0
    );
    let o = voltlift(&["generate", "lift", "--in", path(&base)]);
    assert_eq!(code(&o), 0);
    let g: GraphJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(g.vertices.len(), 10);
    assert_eq!(g.arcs.len(), 60);
}

#[test]
fn round_trip_matches_in_process_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.json");
    voltlift(&[
        "generate",
        "token",
        "--complete",
        "6",
        "--k",
        "3",
        "--out",
        path(&file),
    ]);
    let o = voltlift(&["spectrum", "--in", path(&file), "--method", "direct"]);
    assert_eq!(code(&o), 0);
    let g = token_graph(&complete_graph(6), 3).unwrap();
    let expected = direct_spectrum(g.digraph(), UniversalCoefficients::adjacency()).unwrap();
    assert_eq!(stdout(&o), expected.to_csv());
}

#[test]
fn outputs_are_deterministic() {
    let args = [
        "spectrum",
        "--token-cayley",
        "Z3xZ3",
        "--gens",
        "10,01",
        "--k",
        "2",
        "--per-character",
    ];
    let a = voltlift(&args);
    let b = voltlift(&args);
    assert_eq!(a.stdout, b.stdout);
    let seq = Command::new(env!("CARGO_BIN_EXE_voltlift"))
        .args(args)
        .env("VOLTLIFT_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, seq.stdout);
}

#[test]
fn spectrum_methods() {
    let o = voltlift(&[
        "spectrum",
        "--circulant-linegraph",
        "12",
        "2,3",
        "--method",
        "characters",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(csv_count(&stdout(&o)), 24);
    assert!(stdout(&o).contains("-1,0,2"));

    let o = voltlift(&[
        "spectrum",
        "--johnson-base",
        "7",
        "3",
        "--method",
        "characters",
        "--per-character",
    ]);
    let text = stdout(&o);
    assert!(text.starts_with("re,im,multiplicity\n12,0,1\n5,0,6\n0,0,14\n-3,0,14\n"));
    assert!(text.contains("\"1=6\",5,0,1"));

    let o = voltlift(&[
        "spectrum",
        "--complete",
        "5",
        "--k",
        "2",
        "--method",
        "direct",
        "--laplacian",
    ]);
    assert_eq!(stdout(&o), "re,im,multiplicity\n8,0,5\n5,0,4\n0,0,1\n");

    let o = voltlift(&["spectrum", "--johnson", "5", "2", "--universal", "-1,1,0,0"]);
    assert_eq!(stdout(&o), "re,im,multiplicity\n8,0,5\n5,0,4\n0,0,1\n");

    let o = voltlift(&[
        "spectrum",
        "--token-cayley",
        "S3",
        "--gens",
        "3",
        "--k",
        "5",
        "--method",
        "irreps",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "re,im,multiplicity\n2,0,2\n-1,0,4\n");

    let o = voltlift(&[
        "spectrum",
        "--token-cayley",
        "Z5",
        "--gens",
        "1",
        "--directed",
        "--k",
        "2",
    ]);
    assert_eq!(csv_count(&stdout(&o)), 10);
    assert!(stdout(&o).contains("0.5,1.53884176859,1"));
}

#[test]
fn verify_commands() {
    let o = voltlift(&["verify", "isomorphism", "--johnson", "5", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("PASS"));

    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let o = voltlift(&[
        "verify",
        "isomorphism",
        "--circulant-linegraph",
        "12",
        "2,3",
        "--certificate",
        path(&cert),
    ]);
    assert_eq!(code(&o), 0);
    let c: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(c["result"], "certificate");
    assert_eq!(c["mapping"].as_array().unwrap().len(), 24);

    let o = voltlift(&[
        "verify",
        "spectrum-equivalence",
        "--token-cayley",
        "Z3xZ3",
        "--gens",
        "10,01",
        "--k",
        "2",
    ]);
    assert_eq!(code(&o), 0);
    let o = voltlift(&["verify", "johnson-closed-form", "--n", "8", "--k", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("PASS J(8,3)"));
}

#[test]
fn mismatches_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("base.json");
    let target = dir.path().join("j52.json");
    voltlift(&[
        "generate",
        "base",
        "--johnson",
        "5",
        "2",
        "--out",
        path(&base),
    ]);
    voltlift(&[
        "generate",
        "token",
        "--complete",
        "5",
        "--k",
        "2",
        "--out",
        path(&target),
    ]);
    let o = voltlift(&[
        "verify",
        "isomorphism",
        "--in",
        path(&base),
        "--target",
        path(&target),
    ]);
    assert_eq!(code(&o), 0);

    let other = dir.path().join("c10.json");
    voltlift(&[
        "generate",
        "token",
        "--cycle",
        "5",
        "--k",
        "2",
        "--out",
        path(&other),
    ]);
    let o = voltlift(&[
        "verify",
        "isomorphism",
        "--in",
        path(&base),
        "--target",
        path(&other),
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("FAIL"));
    let o = voltlift(&[
        "verify",
        "spectrum-equivalence",
        "--in",
        path(&base),
        "--target",
        path(&other),
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn reproduce_tables() {
    for t in ["t1", "t2", "t3"] {
        let o = voltlift(&["reproduce", t]);
        assert_eq!(code(&o), 0, "{t}");
        assert!(stdout(&o).trim_end().ends_with(&format!("PASS {t}")));
        assert!(!stdout(&o).contains("DIFFERS"));
    }
    let o = voltlift(&["reproduce", "t5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("DIFFERS (documented").count(), 5);
    let o = voltlift(&["reproduce", "c5-digraph"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("DIFFERS (documented").count(), 1);
    let o = voltlift(&["reproduce", "s32-examples"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("m=7 a=1,2,3      PASS"));
    assert!(text.contains("m=11 a=1,2,3     DIFFERS"));
    assert!(text.contains("m=12 a=2,3       DIFFERS"));
}

#[test]
fn parse_errors_exit_with_two() {
    for args in [
        vec![
            "spectrum", "--cayley", "Q8", "--gens", "1", "--method", "direct",
        ],
        vec!["spectrum", "--johnson", "6", "3"],
        vec!["spectrum", "--complete", "5", "--method", "characters"],
        vec!["spectrum", "--complete", "5", "--bogus"],
        vec!["generate", "token", "--complete", "5"],
        vec!["spectrum", "--complete", "5", "--cycle", "4"],
        vec!["verify", "isomorphism", "--in", "/nonexistent.json"],
    ] {
        let o = voltlift(&args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = Command::new(env!("CARGO_BIN_EXE_voltlift"))
        .args(["reproduce", "t1"])
        .env("VOLTLIFT_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn oversized_eigenproblems_exit_with_three() {
    let o = voltlift(&[
        "spectrum",
        "--complete",
        "15",
        "--k",
        "7",
        "--method",
        "direct",
    ]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("error:"));
}
