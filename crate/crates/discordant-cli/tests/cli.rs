//! End-to-end runs of the binary against spec files.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_discordant")
}

fn run_spec(dir: &Path, spec: &str) -> Output {
    let spec_path = dir.join("spec.json");
    fs::write(&spec_path, spec).unwrap();
    Command::new(bin())
        .arg("run")
        .arg(&spec_path)
        .arg("--out")
        .arg(dir)
        .arg("--threads")
        .arg("2")
        .output()
        .unwrap()
}

#[test]
fn density_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let spec = r#"{"command":"density","params":{"set":{"kind":"bfree","moduli":[2,3,5]},"windows":[100,1000,10000]},"output":"bfree"}"#;
    let out1 = run_spec(dir.path(), spec);
    assert!(out1.status.success(), "{out1:?}");
    let first = fs::read(dir.path().join("bfree.csv")).unwrap();
    let out2 = run_spec(dir.path(), spec);
    assert!(out2.status.success());
    let second = fs::read(dir.path().join("bfree.csv")).unwrap();
    assert_eq!(first, second);

    let text = String::from_utf8(first).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,count,ratio,known_density,abs_diff");
    assert!(!text.contains('\r'), "LF line endings only");
    // 4/15 heads the known-density column
    assert!(text.contains("0.266666667"));
}

#[test]
fn witness_certificate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let spec = r#"{"command":"witness","params":{"shifts":[0,1,2],"moduli":[4,9,25],"verify":{"kind":"squarefree"}},"output":"wit"}"#;
    let out = run_spec(dir.path(), spec);
    assert!(out.status.success(), "{out:?}");
    let cert: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("wit.json")).unwrap()).unwrap();
    assert_eq!(cert["x"], 548);
    assert_eq!(cert["N"], 900);
    assert_eq!(cert["verifiedRange"], 10);
    assert_eq!(cert["shifts"], serde_json::json!([0, 1, 2]));
    assert_eq!(cert["moduli"], serde_json::json!([4, 9, 25]));
}

#[test]
fn failed_verification_exits_two() {
    // every progression element 0 + 0 + 4k is even, so verification
    // against the evens (as the avoided set) must fail
    let dir = tempfile::tempdir().unwrap();
    let spec = r#"{"command":"witness","params":{"shifts":[0],"moduli":[4],"verify":{"kind":"evens"}},"output":"bad"}"#;
    let out = run_spec(dir.path(), spec);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn malformed_json_exits_one_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_spec(dir.path(), "{\"command\": \"density\",\n  \"params\": {");
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line"), "stderr: {stderr}");
}

#[test]
fn unknown_command_is_reported_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_spec(dir.path(), r#"{"command":"nope","params":{}}"#);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("$.command"), "stderr: {stderr}");
    assert!(stderr.contains("nope"));
}

#[test]
fn unknown_param_field_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_spec(
        dir.path(),
        r#"{"command":"density","params":{"set":{"kind":"evens"},"windows":[10],"bogus":1}}"#,
    );
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("bogus"), "stderr: {stderr}");
}

#[test]
fn missing_output_uses_default_prefix() {
    let dir = tempfile::tempdir().unwrap();
    let spec = r#"{"command":"density","params":{"set":{"kind":"evens"},"windows":[10,20]}}"#;
    let out = run_spec(dir.path(), spec);
    assert!(out.status.success(), "{out:?}");
    let out_dir = dir.path().join("out");
    let entries: Vec<_> = fs::read_dir(&out_dir).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let name = entries[0].as_ref().unwrap().file_name();
    let name = name.to_string_lossy();
    assert!(name.starts_with("density-"), "default prefix, got {name}");
}

#[test]
fn sl2_bounds_table() {
    let dir = tempfile::tempdir().unwrap();
    let spec = r#"{"command":"sl2","params":{"n_range":[10,12],"ks":[2]},"output":"sl2"}"#;
    let out = run_spec(dir.path(), spec);
    assert!(out.status.success(), "{out:?}");
    let text = fs::read_to_string(dir.path().join("sl2.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,ball_size,lower_bound,gamma2,gamma2_bound"
    );
    assert!(lines.next().unwrap().starts_with("10,1012,"));
}

#[test]
fn rotate_fat_cantor_table() {
    let dir = tempfile::tempdir().unwrap();
    let spec = r#"{"command":"rotate","params":{"alpha":"golden","fat_cantor":[0.5,8],"windows":[1000,10000]},"output":"rot"}"#;
    let out = run_spec(dir.path(), spec);
    assert!(out.status.success(), "{out:?}");
    let text = fs::read_to_string(dir.path().join("rot.csv")).unwrap();
    assert!(text.starts_with("n,inside,boundary,window,ratio,target_measure\n"));
    let last = text.lines().last().unwrap();
    let ratio: f64 = last.split(',').nth(4).unwrap().parse().unwrap();
    assert!((ratio - 0.501953125).abs() < 0.01, "ratio {ratio}");
}

#[test]
fn detect_duality_and_ie_tables() {
    let dir = tempfile::tempdir().unwrap();
    let spec = r#"{"command":"detect","params":{"set":{"kind":"squarefree"},"check":"duality","h_max":3,"budget":5000},"output":"dual"}"#;
    let out = run_spec(dir.path(), spec);
    assert!(out.status.success(), "{out:?}");
    let text = fs::read_to_string(dir.path().join("dual.csv")).unwrap();
    assert!(text.lines().last().unwrap().contains("242"));

    let spec = r#"{"command":"ie","params":{"action":"independence","moduli":[2,3,4],"window":10000},"output":"ie"}"#;
    let out = run_spec(dir.path(), spec);
    assert!(out.status.success(), "{out:?}");
    let text = fs::read_to_string(dir.path().join("ie.csv")).unwrap();
    // the (2,4) pair is the one flagged
    let flagged: Vec<&str> = text.lines().filter(|l| l.ends_with("true")).collect();
    assert_eq!(flagged.len(), 1);
    assert!(flagged[0].starts_with("2,4,"));
}

#[test]
fn ena_swing_and_symbolic_extract() {
    let dir = tempfile::tempdir().unwrap();
    let spec = r#"{"command":"ena","params":{"action":"swing","sparsity":4,"blocks":4},"output":"ena"}"#;
    let out = run_spec(dir.path(), spec);
    assert!(out.status.success(), "{out:?}");
    let text = fs::read_to_string(dir.path().join("ena.csv")).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].ends_with("anti"));
    assert!(rows[1].ends_with("match"));

    let spec = r#"{"command":"symbolic","params":{"action":"extract","set":{"kind":"evens"},"h_max":1},"output":"ext"}"#;
    let out = run_spec(dir.path(), spec);
    assert!(out.status.success(), "{out:?}");
    let text = fs::read_to_string(dir.path().join("ext.csv")).unwrap();
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("stabilized,2,"), "row: {last}");
}
