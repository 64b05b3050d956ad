use std::process::{Command, Output};

use dpverify::builtin;
use serde_json::{json, Value};

fn dpverify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpverify")).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write_case(dir: &tempfile::TempDir, name: &str, v: &Value) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, v.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn verify_all_exits_zero_with_flags() {
    let out = dpverify(&["verify", "--all"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["summary"]["fail"], json!(0));
    assert_eq!(doc["summary"]["flagged"], json!(2));
    assert_eq!(doc["reports"].as_array().unwrap().len(), 10);
    assert!(doc["reports"][0].get("timing_us").is_none());

    let again = dpverify(&["verify", "--all"]);
    assert_eq!(out.stdout, again.stdout);

    let timed = stdout_json(&dpverify(&["verify", "--all", "--timing"]));
    assert!(timed["reports"][0]["timing_us"].is_u64());
}

#[test]
fn verify_single_and_text() {
    let out = dpverify(&["verify", "--case", "B-iii-4", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("Name"));
    assert!(text.contains("B-iii-4"));
    assert!(text.contains("1 cases: 1 pass, 0 flagged, 0 fail"), "{text}");
}

#[test]
fn corrupted_case_file_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_str(builtin::source("B-i-2").unwrap()).unwrap();
    v["expected"]["kx3"] = json!(99);
    let path = write_case(&dir, "bad.json", &v);
    let out = dpverify(&["verify", "--case", &path, "--case", "B-i-3"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = stdout_json(&out);
    assert_eq!(doc["summary"]["fail"], json!(1));
    assert_eq!(doc["reports"][0]["status"], json!("fail"));
}

#[test]
fn schema_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_str(builtin::source("B-iii-2").unwrap()).unwrap();
    v["lattice"]["gram"][2][0] = json!(8);
    let path = write_case(&dir, "asym.json", &v);
    let out = dpverify(&["verify", "--case", &path]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("lattice.gram"), "{err}");

    let out = dpverify(&["verify", "--case", "Z-9"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(dpverify(&["verify", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(dpverify(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(dpverify(&[]).status.code(), Some(2));
}

#[test]
fn out_path_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = dpverify(&["verify", "--case", "A-1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["reports"][0]["case"], json!("A-1"));

    let unwritable = dir.path().join("missing").join("report.json");
    let out = dpverify(&["verify", "--case", "A-1", "--out", unwritable.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn list_and_version() {
    let out = dpverify(&["--list-cases"]);
    let listed: Vec<String> = String::from_utf8(out.stdout).unwrap().lines().map(String::from).collect();
    assert_eq!(listed, builtin::ids().map(String::from).collect::<Vec<_>>());
    let out = dpverify(&["--version"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("dpverify "));
}

#[test]
fn enumerate_on_a_builtin_lattice() {
    let out = dpverify(&["enumerate", "--lattice", "B-iii-4", "--square", "-2", "--deg-max", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let classes: Vec<&Value> = doc["classes"].as_array().unwrap().iter().map(|c| &c["class"]).collect();
    assert_eq!(classes, vec![&json!([0, 1, 0]), &json!([3, -1, -1]), &json!([4, -3, -1])]);

    let out = dpverify(&[
        "enumerate",
        "--lattice",
        "B-iii-4",
        "--square",
        "-2",
        "--constraint",
        "C5=0",
        "--constraint",
        "H - Gamma=0",
    ]);
    assert_eq!(stdout_json(&out)["count"], json!(0));
}

#[test]
fn enumerate_on_a_bare_lattice_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_case(
        &dir,
        "a2.json",
        &json!({
            "basis": ["a", "b"],
            "gram": [[-2, 1], [1, -2]],
        }),
    );
    let out = dpverify(&["enumerate", "--lattice", &path, "--square", "-2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    // the A2 root system
    assert_eq!(stdout_json(&out)["count"], json!(6));

    let out = dpverify(&["enumerate", "--lattice", "B-ii", "--square", "0"]);
    assert_eq!(out.status.code(), Some(2), "indefinite without a window");
    let out = dpverify(&["enumerate", "--lattice", "B-ii", "--square", "-2", "--constraint", "H"]);
    assert_eq!(out.status.code(), Some(2));
    let out = dpverify(&["enumerate", "--lattice", "B-ii", "--square", "-2", "--deg-max", "9", "--degree-by", "Q"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn game_matches_both_routes() {
    let doc = stdout_json(&dpverify(&["game", "--d", "6", "--kw3", "40", "--kwb", "25", "--g", "5"]));
    assert_eq!(doc["closed_form"], json!({"kx3": 2, "kx_dot_c": 1, "z": "5/2"}));
    assert_eq!(doc["system"], doc["closed_form"]);
    assert_eq!(doc["agree"], json!(true));
    assert_eq!(doc["admissible_triple"], json!([1, "1/2", "-1/2"]));
    assert_eq!(doc["eliminations"]["all_excluded"], json!(true));

    let doc = stdout_json(&dpverify(&["game", "--d", "5", "--kw3", "54", "--kwb", "28", "--g", "6"]));
    assert_eq!(doc["closed_form"], json!({"kx3": 10, "kx_dot_c": 0, "z": "2/3"}));

    for bad in [["7", "40", "25", "5"], ["5", "40", "25", "5"], ["6", "40", "25", "-1"]] {
        let out = dpverify(&["game", "--d", bad[0], "--kw3", bad[1], "--kwb", bad[2], "--g", bad[3]]);
        assert_eq!(out.status.code(), Some(2), "{bad:?}");
    }
}
