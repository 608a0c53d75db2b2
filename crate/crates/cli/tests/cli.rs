use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn simspec(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_simspec"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const EDGE: &str = r#"{"facets": [["a", "b"]]}"#;
const HOLLOW: &str = r#"{"facets": [["a", "b"], ["b", "c"], ["a", "c"]]}"#;

fn temp_json(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn spectrum_of_lone_edge() {
    let v = json_of(&simspec(&["spectrum", "--dim", "0", "--op", "up"], EDGE));
    assert_eq!(v["lambda_max"], 2.0);
    assert_eq!(v["has_top_eigenvalue"], true);
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 2);
}

#[test]
fn spectrum_reads_input_file_and_weights() {
    let input = temp_json(EDGE);
    let weights = temp_json(r#"[{"face": "a", "w": 1}, {"face": "b", "w": 1}, {"face": "a,b", "w": 1}]"#);
    let w = format!("file:{}", weights.path().display());
    let v = json_of(&simspec(
        &["--input", input.path().to_str().unwrap(), "spectrum", "--dim", "0", "--weighting", &w],
        "",
    ));
    assert_eq!(v["regime"], "custom");
    assert_eq!(v["lambda_max"], 2.0);
    let u = json_of(&simspec(&["spectrum", "--dim", "1", "--op", "down", "--weighting", "uniform"], EDGE));
    assert_eq!(u["eigenvalues"][0], 2.0);
}

#[test]
fn balance_of_hollow_triangle() {
    let v = json_of(&simspec(&["balance", "--dim", "0"], HOLLOW));
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0]["balanced"], false);
    assert_eq!(comps[0]["witness"]["negative_cycle"].as_array().unwrap().len(), 6);
}

#[test]
fn components_circuits_and_betti() {
    let c = json_of(&simspec(&["components", "--dim", "1"], r#"{"facets": [["a", "b"], ["c", "d"]]}"#));
    assert_eq!(c["components"].as_array().unwrap().len(), 2);
    let r = json_of(&simspec(&["circuits", "--dim", "0"], HOLLOW));
    assert_eq!(r["forbidden"], true);
    assert_eq!(r["complete"], true);
    let b = json_of(&simspec(&["betti"], HOLLOW));
    assert_eq!(b["reduced"], serde_json::json!([0, 0, 1]));
    assert_eq!(b["acyclic"], false);
}

#[test]
fn construct_operations() {
    let other = temp_json(r#"{"facets": [["x", "y"]]}"#);
    let path = other.path().to_str().unwrap();
    let w = json_of(&simspec(&["construct", "wedge", "--other", path, "--face", "b", "--other-face", "x"], EDGE));
    assert_eq!(w["facets"], serde_json::json!([["a", "b"], ["b", "y"]]));
    let p = json_of(&simspec(&["construct", "product", "--other", path], EDGE));
    assert_eq!(p["facets"].as_array().unwrap().len(), 4);
    let path3 = r#"{"facets": [["a", "b"], ["b", "c"]]}"#;
    let d = json_of(&simspec(&["construct", "duplicate", "--motif-vertices", "a", "--dim", "0"], path3));
    assert_eq!(d["facets"].as_array().unwrap().len(), 3);
    let f = json_of(&simspec(&["construct", "family", "--dim", "0", "--steps", "2"], ""));
    assert_eq!(f["facets"].as_array().unwrap().len(), 3);
}

#[test]
fn wedge_renames_colliding_vertices() {
    let other = temp_json(EDGE);
    let w = json_of(&simspec(
        &["construct", "wedge", "--other", other.path().to_str().unwrap(), "--face", "b", "--other-face", "a", "--map", "b:a"],
        EDGE,
    ));
    assert_eq!(w["facets"], serde_json::json!([["a", "b"], ["b", "b~"]]));
}

#[test]
fn generate_is_reproducible() {
    let a = simspec(&["--seed", "1", "generate", "random", "--max-vertices", "7"], "");
    let b = simspec(&["--seed", "1", "generate", "random", "--max-vertices", "7"], "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let fam = json_of(&simspec(&["generate", "wedge-family", "--dim", "1", "--steps", "3"], ""));
    assert_eq!(fam["facets"].as_array().unwrap().len(), 4);
    let base = json_of(&simspec(&["generate", "wedge-family", "--steps", "0"], ""));
    assert_eq!(base["facets"].as_array().unwrap().len(), 1);
}

#[test]
fn generated_complexes_round_trip() {
    for seed in 0..10 {
        let s = seed.to_string();
        let out = simspec(&["--seed", &s, "generate", "random"], "");
        let v = json_of(&out);
        let facets = serde_json::json!({ "facets": v["facets"] }).to_string();
        let again = json_of(&simspec(&["export", "--dim", "0", "--boundary"], &facets));
        assert!(again["matrix"].is_array());
        let reread = json_of(&simspec(&["betti"], &facets));
        assert!(reread["reduced"].is_array());
    }
}

#[test]
fn export_labels_rows() {
    let v = json_of(&simspec(&["export", "--dim", "0"], EDGE));
    assert_eq!(v["faces"], serde_json::json!(["a", "b"]));
    assert_eq!(v["matrix"], serde_json::json!([[1.0, -1.0], [-1.0, 1.0]]));
    let d = json_of(&simspec(&["export", "--dim", "1", "--boundary"], EDGE));
    assert_eq!(d["matrix"], serde_json::json!([[-1], [1]]));
}

#[test]
fn verify_streams_reports_and_is_deterministic() {
    let args = ["--seed", "7", "verify", "t31", "--trials", "20", "--max-vertices", "8", "--max-dim", "3"];
    let a = simspec(&args, "");
    let b = simspec(&args, "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let summary = &lines.last().unwrap()["summary"];
    assert_eq!(summary["disagreements"], 0);
    assert_eq!(summary["reports"].as_u64().unwrap() as usize, lines.len() - 1);
    for t in ["c32", "circuits", "t42", "t44", "t49"] {
        let out = simspec(&["verify", t, "--trials", "4"], "");
        assert!(out.status.success(), "{t}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(simspec(&["betti"], r#"{"facets": [["a", "a"]]}"#).status.code(), Some(1));
    assert_eq!(simspec(&["betti"], "not json").status.code(), Some(1));
    assert_eq!(simspec(&["spectrum", "--dim", "5"], EDGE).status.code(), Some(1));
    assert_eq!(simspec(&["verify", "t99"], "").status.code(), Some(1));
    assert_eq!(simspec(&["generate", "random", "--max-vertices", "0"], "").status.code(), Some(1));
    assert_eq!(simspec(&["spectrum", "--dim", "0", "--weighting", "bogus"], EDGE).status.code(), Some(1));
    assert_eq!(simspec(&["--input", "/nonexistent/file.json", "betti"], "").status.code(), Some(1));
    let motif = simspec(&["construct", "duplicate", "--motif-vertices", "a,b", "--dim", "0"], r#"{"facets": [["a", "b", "c"]]}"#);
    assert_eq!(motif.status.code(), Some(1));
    assert!(!motif.stderr.is_empty());
}
