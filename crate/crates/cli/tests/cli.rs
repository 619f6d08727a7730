//! End-to-end tests of the command-line interface: dispatch, output
//! determinism, exit codes, and the JSON error surface.

use std::path::PathBuf;
use std::process::{Command, Output};

fn skein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skein"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &tempfile::TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, content).expect("write fixture");
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const DATUM: &str = r#"{
  "genus": 2, "boundary": 0,
  "curves": ["c1", "c2", "c3"],
  "faces": [
    {"type": 3, "sides": [{"curve":"c1","lift":"prime"},{"curve":"c2","lift":"prime"},{"curve":"c3","lift":"prime"}]},
    {"type": 3, "sides": [{"curve":"c1","lift":"double"},{"curve":"c2","lift":"double"},{"curve":"c3","lift":"double"}]}
  ]
}"#;

#[test]
fn trace_pants_latex() {
    let out = skein(&[
        "trace", "pants", "--type", "2", "--component", "a11", "--twist", "0", "--format", "latex",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    // The three-term closed form with the q + q^(-1) middle coefficient.
    assert!(text.contains("(q^{1} + q^{-1})"), "got: {text}");
    assert_eq!(text.matches("x_{1}^{2}").count(), 3, "got: {text}");
    assert!(text.contains("[x_{1}^{2} u_{1}^{2}]_{W}"), "got: {text}");
    assert!(text.contains("[x_{1}^{2} u_{1}^{-2} u_{2}^{4}]_{W}"), "got: {text}");
}

#[test]
fn torus_mul_with_form_flag() {
    let dir = tempfile::tempdir().unwrap();
    let form = write(
        &dir,
        "q.json",
        r#"{"gens": ["x1", "x2"], "mat": [[0, 1], [-1, 0]]}"#,
    );
    let a = write(
        &dir,
        "a.json",
        r#"{"terms": [{"exp": [1, 0], "coef": [{"q2": 0, "v2": [], "c": 1}]}]}"#,
    );
    let b = write(
        &dir,
        "b.json",
        r#"{"terms": [{"exp": [0, 1], "coef": [{"q2": 0, "v2": [], "c": 1}]}]}"#,
    );
    let out = skein(&[
        "torus", "mul",
        "--form", form.to_str().unwrap(),
        "--a", a.to_str().unwrap(),
        "--b", b.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // x^(1,0) x^(0,1) = q^(1/2) x^(1,1).
    assert_eq!(v["terms"][0]["exp"], serde_json::json!([1, 1]));
    assert_eq!(v["terms"][0]["coef"][0]["q2"], serde_json::json!(1));
}

#[test]
fn byte_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let datum = write(&dir, "datum.json", DATUM);
    let family = write(
        &dir,
        "family.json",
        r#"[{"components": [{"tag": "l1", "twists": [0,0,0]}]}, {"components": []}]"#,
    );
    let run = || {
        let out = skein(&[
            "surface", "phi",
            "--datum", datum.to_str().unwrap(),
            "--family", family.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        stdout(&out)
    };
    let first = run();
    let second = run();
    assert_eq!(first, second);
    // The single loop maps to u^2 + u^(-2) on its curve.
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn membership_error_is_machine_readable() {
    let dir = tempfile::tempdir().unwrap();
    let datum = write(&dir, "datum.json", DATUM);
    // n(c1) odd violates the triangular-triple parity.
    let coord = write(&dir, "coord.json", r#"{"n": [1, 0, 0], "t": [0, 0, 0]}"#);
    let out = skein(&[
        "coords", "split",
        "--datum", datum.to_str().unwrap(),
        "--coord", coord.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["error"]["code"], serde_json::json!("membership"));
    assert!(v["error"]["message"].as_str().unwrap().contains("odd"));
}

#[test]
fn coords_member_reports_violation() {
    let dir = tempfile::tempdir().unwrap();
    let coord = write(&dir, "c.json", r#"{"face": "P1", "n": [0], "t": [-1]}"#);
    let out = skein(&[
        "coords", "member", "--face-type", "1", "--coord", coord.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["member"], serde_json::json!(false));
}

#[test]
fn decompose_round_trip_via_files() {
    let dir = tempfile::tempdir().unwrap();
    let coord = write(
        &dir,
        "c.json",
        r#"{"face": "P3", "n": [2, 0, 0], "t": [4, 2, 0]}"#,
    );
    let out = skein(&[
        "coords", "decompose", "--face-type", "3", "--coord", coord.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // One return arc with two twists on side 1.
    assert_eq!(v["components"][0]["tag"], serde_json::json!("a11"));
    assert_eq!(v["components"][0]["twists"], serde_json::json!([2, 0, 0]));
}

#[test]
fn gkdim_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let datum = write(&dir, "datum.json", DATUM);
    let out = skein(&["surface", "gkdim", "--datum", datum.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["gk_dimension"], serde_json::json!(6));
}

#[test]
fn verify_single_suite() {
    let out = skein(&["verify", "--suite", "recursion"]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("recursion: PASS"), "got: {err}");
}

#[test]
fn tri_rank_and_qmatrix() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(
        &dir,
        "tri.json",
        r#"{"edges": [{"id":"a","boundary":true},{"id":"b","boundary":true},{"id":"c","boundary":true}],
            "faces": [{"type":"tri","sides":["a","b","c"]}]}"#,
    );
    let out = skein(&["tri", "rank", "--tri", tri.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rank"], serde_json::json!(6));

    let out = skein(&["tri", "qmatrix", "--tri", tri.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["mat"][0][1], serde_json::json!(1));
}

#[test]
fn presented_monogon_mul() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(
        &dir,
        "um.json",
        r#"{"terms": [{"a": 0, "b": 1, "coef": [{"q2": 0, "v2": [], "c": 1}]}]}"#,
    );
    let b = write(
        &dir,
        "up.json",
        r#"{"terms": [{"a": 1, "b": 0, "coef": [{"q2": 0, "v2": [], "c": 1}]}]}"#,
    );
    let out = skein(&[
        "presented", "--algebra", "monogon", "mul",
        "--a", a.to_str().unwrap(),
        "--b", b.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // u- u+ = q^2 u+ u- - (q^2 - 1): two normal-form terms.
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn usage_error_exits_2() {
    let out = skein(&["torus", "no-such-op"]);
    assert_eq!(out.status.code(), Some(2));
}
