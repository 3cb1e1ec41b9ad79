use std::io::Write;
use std::process::{Command, Output, Stdio};

use pspec_core::harness::{verify_turan_extremal, GraphSource, HarnessOptions};
use pspec_core::procedures::extract_dense_subgraph;
use pspec_core::{parse_graph6, solve_lambda_p, ExtractionParams, Graph, SolveOptions};

fn pspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pspec")).args(args).env_remove("PSPEC_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn lambda_of_an_edge_is_one() {
    let o = pspec(&["lambda", "--graph6", "A_", "--p", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("λ = 1 "), "{}", stdout(&o));
}

#[test]
fn turan_k22() {
    let o = pspec(&["turan", "--r", "2", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "C]\n");
    let o = pspec(&["turan", "--r", "2", "--s", "2", "--t", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(parse_graph6(stdout(&o).trim()).unwrap().edge_count(), 3);
}

#[test]
fn verify_names_k23() {
    let o = pspec(&["verify", "--theorem", "tur", "--n", "5", "--r", "2", "--p", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("[PASS]"));
    assert!(out.contains("maximizer DFw K_{2,3}"), "{out}");
    assert!(out.contains("(unique)"));
}

#[test]
fn usage_errors_exit_2_with_one_line() {
    for args in [
        vec!["lambda", "--graph6", "zz!"],
        vec!["lambda", "--graph6", "A_", "--p", "0.5"],
        vec!["lambda", "--p", "2"],
        vec!["lambda", "--graph6", "A_", "--build", "complete:3"],
        vec!["bogus"],
        vec!["turan", "--r", "0", "--n", "3"],
        vec!["extract", "--build", "complete:4", "--A", "0.3", "--gamma", "0.2"],
        vec!["verify", "--theorem", "nope", "--n", "4"],
        vec!["verify", "--theorem", "tur", "--n", "4"],
        vec!["verify", "--theorem", "tur", "--n", "4", "--r", "2", "--workers", "0"],
        vec!["lambda", "--build", "wheel:5"],
        vec!["bounds", "--build", "complete:4", "--r", "2"],
    ] {
        let o = pspec(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = stderr(&o);
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error:"), "{args:?}: {err}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(pspec(&["--help"]).status.code(), Some(0));
    assert_eq!(pspec(&["--version"]).status.code(), Some(0));
    assert_eq!(pspec(&["verify", "--help"]).status.code(), Some(0));
}

#[test]
fn json_is_byte_identical_to_library() {
    let o = pspec(&["lambda", "--build", "cycle:5", "--p", "1.5", "--format", "json"]);
    let g = Graph::cycle(5).unwrap();
    let lib = solve_lambda_p(&g, 1.5, &SolveOptions::default()).unwrap().to_json();
    assert_eq!(stdout(&o), format!("{lib}\n"));

    let o = pspec(&["verify", "--theorem", "tur", "--n", "5", "--r", "3", "--p", "3", "--format", "json"]);
    let lib = verify_turan_extremal(5, 3, 3.0, &GraphSource::BuiltIn, &HarnessOptions::default()).unwrap().to_json();
    assert_eq!(stdout(&o), format!("{lib}\n"));

    let o = pspec(&["extract", "--graph6", "E~{?", "--A", "0.5", "--gamma", "0.1", "--format", "json"]);
    let g = parse_graph6("E~{?").unwrap();
    let params = ExtractionParams::new(2.0, 0.5, 0.1, 0.0).unwrap();
    let (_, trace) = extract_dense_subgraph(&g, &params, &SolveOptions::default()).unwrap();
    assert_eq!(stdout(&o), format!("{}\n", trace.to_json()));
}

#[test]
fn seed_from_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_pspec"));
        c.args(["verify", "--theorem", "sweep", "--count", "5", "--n-max", "6", "--p", "2", "--format", "json"]).args(extra);
        match env {
            Some(s) => c.env("PSPEC_SEED", s),
            None => c.env_remove("PSPEC_SEED"),
        };
        stdout(&c.output().unwrap())
    };
    assert_eq!(run(Some("7"), &[]), run(None, &["--seed", "7"]));
    assert_ne!(run(Some("7"), &[]), run(None, &[]));
    assert!(run(None, &[]).contains("\"seed\":42"));
}

#[test]
fn workers_do_not_change_output() {
    let args = ["verify", "--theorem", "extract", "--count", "20", "--n-max", "8", "--format", "json"];
    let one = pspec(&args);
    let four = pspec(&[&args[..], &["--workers", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&four));
}

#[test]
fn stdin_and_file_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pspec"))
        .args(["joints", "--file", "-", "--r", "3", "--format", "csv"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"D~{\nC]\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "graph6,r,joint_size\nD~{,3,3\nC],3,0\n");

    let path = std::env::temp_dir().join(format!("pspec-cli-{}.g6", std::process::id()));
    std::fs::write(&path, "C]\nC^\nCs\n").unwrap();
    let o = pspec(&["verify", "--theorem", "tur", "--n", "4", "--r", "2", "--source-file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("2 graphs"));
}

#[test]
fn bounds_and_enumerate() {
    let o = pspec(&["bounds", "--build", "turan:3,7", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("bound_id,graph,n,r,p,lhs,rhs,slack,pass\n"));
    for id in ["max", "me", "md", "in0", "in1", "motzkin-straus", "le", "lv", "te", "edge-formula"] {
        assert!(out.lines().any(|l| l.starts_with(&format!("{id},")) || l.starts_with(&format!("{id}."))), "missing {id}");
    }
    let o = pspec(&["enumerate", "--n", "4"]);
    assert_eq!(stdout(&o).lines().count(), 11);
    let o = pspec(&["enumerate", "--n", "5", "--max-clique", "2"]);
    assert_eq!(stdout(&o).lines().count(), 14);
}

#[test]
fn symmetrize_and_extract() {
    let o = pspec(&["symmetrize", "--build", "cycle:5", "--weights", "1,1,1,1,1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["parts"], serde_json::json!([[0, 2, 3], [1, 4]]));
    assert_eq!(v["deficits"], serde_json::json!([]));

    let o = pspec(&["extract", "--graph6", "E~{?", "--A", "0.5", "--gamma", "0.1", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("5 of 6 vertices kept"), "{}", stdout(&o));
}
