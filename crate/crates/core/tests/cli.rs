use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

fn axial(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_axial")).args(args).output().unwrap()
}

#[test]
fn z_scenario_passes() {
    let out = tempfile::tempdir().unwrap();
    let cfg = scenario("z.toml");
    let o = axial(&["report", "--config", cfg.to_str().unwrap(), "--out", out.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["audit"]["virtually_cyclic"], true);
    assert_eq!(report["suites"].as_array().unwrap().len(), 2);
}

#[test]
fn z2_scenario_fails_axiom1() {
    let out = tempfile::tempdir().unwrap();
    let cfg = scenario("z2.toml");
    let o = axial(&["report", "--config", cfg.to_str().unwrap(), "--out", out.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = axial(&["verify", "axiom1", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["status"], "FAIL");
}

#[test]
fn audit_subcommand_prints_json() {
    let cfg = scenario("z.toml");
    let o = axial(&["audit", "--config", cfg.to_str().unwrap(), "--radius", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["radii"], serde_json::json!([2, 3, 4]));
}

#[test]
fn errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "name = \"x\"\n[group]\nfamily = \"free\"\n").unwrap();
    assert_eq!(axial(&["audit", "--config", bad.to_str().unwrap()]).status.code(), Some(1));
    let missing = dir.path().join("missing.toml");
    assert_eq!(axial(&["audit", "--config", missing.to_str().unwrap()]).status.code(), Some(1));
    let cfg = scenario("z.toml");
    assert_eq!(axial(&["verify", "nope", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn dot_exports_are_written() {
    let out = tempfile::tempdir().unwrap();
    let cfg = scenario("f2.toml");
    let o = axial(&[
        "complex",
        "--config",
        cfg.to_str().unwrap(),
        "--radius",
        "5",
        "--out",
        out.path().to_str().unwrap(),
        "--dot",
    ]);
    assert!(matches!(o.status.code(), Some(0 | 2 | 3)), "{}", String::from_utf8_lossy(&o.stderr));
    let names: Vec<String> = std::fs::read_dir(out.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert!(names.iter().any(|n| n.starts_with("complex_k") && n.ends_with(".dot")), "{names:?}");
    assert!(names.iter().any(|n| n == "projections.tsv"));
    let dot = std::fs::read_to_string(out.path().join("complex_k1.dot")).unwrap_or_default();
    assert!(dot.is_empty() || dot.starts_with("graph"));
}
