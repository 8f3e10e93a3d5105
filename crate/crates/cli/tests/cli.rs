//! End-to-end tests of the scenario runner and the binary contract.

use std::path::Path;
use std::process::Command;

use curlab_cli::catalog;
use curlab_cli::scenario::Scenario;
use curlab_cli::suites::run_scenario;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_curlab"))
}

fn tmp_dir(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("curlab-test-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn catalog_has_the_ten_registered_suites() {
    let names: Vec<&str> = catalog::SUITES.iter().map(|s| s.name).collect();
    assert_eq!(
        names,
        vec![
            "homotopy-identity",
            "boundary-identity",
            "u-eps",
            "v-eps",
            "f-t",
            "mt-metric",
            "c1-compare",
            "mv-cosheaf",
            "snowflake",
            "homology",
        ]
    );
    for entry in catalog::SUITES {
        assert!(!entry.reference.is_empty(), "{} lacks a reference", entry.name);
        assert!(!entry.columns.is_empty());
    }
}

#[test]
fn every_example_scenario_validates_against_its_schema() {
    for entry in catalog::SUITES {
        let sc = Scenario::parse_json(entry.example)
            .unwrap_or_else(|e| panic!("{}: example does not parse: {e}", entry.name));
        assert_eq!(sc.suite, entry.name);
        sc.validate(entry.schema)
            .unwrap_or_else(|e| panic!("{}: example fails its own schema: {e}", entry.name));
    }
}

#[test]
fn shipped_scenario_files_validate() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let sc = Scenario::from_file(&path).unwrap();
        let suite = catalog::find(&sc.suite).expect("shipped scenario names a suite");
        sc.validate(suite.schema).unwrap();
        seen += 1;
    }
    assert_eq!(seen, catalog::SUITES.len());
}

#[test]
fn unknown_suite_and_schema_violations_are_rejected() {
    let sc = Scenario::parse_json(r#"{"suite":"no-such-suite"}"#).unwrap();
    assert!(run_scenario(&sc).is_err());
    let sc = Scenario::parse_json(r#"{"suite":"snowflake","params":{"alpha":"not a number"}}"#).unwrap();
    assert!(run_scenario(&sc).is_err());
    let sc = Scenario::parse_json(r#"{"suite":"snowflake","params":{"bogus":1}}"#).unwrap();
    assert!(run_scenario(&sc).is_err());
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let sc = Scenario::parse_json(r#"{"suite":"mt-metric","seed":11,"params":{"count":5}}"#).unwrap();
    let a = run_scenario(&sc).unwrap().to_json();
    let b = run_scenario(&sc).unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn f_t_suite_emits_the_documented_csv_columns() {
    let sc = Scenario::parse_json(r#"{"suite":"f-t","seed":7,"params":{"t_list":[0.25]}}"#).unwrap();
    let report = run_scenario(&sc).unwrap();
    let csv = report.to_csv();
    let header = csv.lines().next().unwrap();
    assert_eq!(header, "t,uniform_dist,mt_sup,mt_lip,mt_total,lip_estimate");
    assert_eq!(csv.lines().count(), 2);
}

#[test]
fn homology_suite_accepts_explicit_matrices() {
    // Simplicial circle passed inline: Betti (1, 1).
    let sc = Scenario::parse_json(
        r#"{"suite":"homology","params":{"matrices":[[[-1,0,1],[1,-1,0],[0,1,-1]]]}}"#,
    )
    .unwrap();
    let report = run_scenario(&sc).unwrap();
    assert!(report.all_pass());
    let betti: Vec<f64> = report.rows.iter().map(|r| r[1]).collect();
    assert_eq!(betti, vec![1.0, 1.0]);
    // A non-complex is rejected.
    let sc = Scenario::parse_json(
        r#"{"suite":"homology","params":{"matrices":[[[1,0],[0,1]],[[1,0],[0,1]]]}}"#,
    )
    .unwrap();
    assert!(run_scenario(&sc).is_err());
}

#[test]
fn mv_cosheaf_accepts_regions_and_clouds_from_json() {
    // Two overlapping half-planes and an explicit straddling cloud.
    let sc = Scenario::parse_json(
        r#"{"suite":"mv-cosheaf","seed":3,"params":{
            "u_halfspace":[1,0,0.6],
            "v_halfspace":[-1,0,-0.4],
            "count":10,
            "cloud":[[0.1,0.0,2.0],[0.5,0.0,-1.5],[0.9,0.2,0.75]]}}"#,
    )
    .unwrap();
    let report = run_scenario(&sc).unwrap();
    assert!(report.all_pass());
    // One explicit run, split exactly.
    assert_eq!(report.rows[0][0], 1.0);
    assert_eq!(report.rows[0][1], 1.0);

    // Disjoint balls: K always lands in one side, the overlap is empty, so
    // only the decomposition verdict is emitted.
    let sc = Scenario::parse_json(
        r#"{"suite":"mv-cosheaf","seed":3,"params":{
            "u_ball":[-1.5,0,1],"v_ball":[1.5,0,1],"count":20,"atoms":3}}"#,
    )
    .unwrap();
    let report = run_scenario(&sc).unwrap();
    assert!(report.all_pass());
    assert_eq!(report.verdicts.len(), 1);
}

#[test]
fn binary_run_writes_report_and_exits_zero_on_pass() {
    let dir = tmp_dir("run");
    let scenario_path = dir.join("scenario.json");
    std::fs::write(
        &scenario_path,
        r#"{"suite":"snowflake","seed":3,"params":{"alpha":0.5,"meshes":[0.01,0.0001]}}"#,
    )
    .unwrap();
    let out = dir.join("out");
    let status = binary()
        .args(["run", "--scenario"])
        .arg(&scenario_path)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["suite"], "snowflake");
    assert!(Path::new(&out.join("snowflake.csv")).exists());

    // Determinism at the file level: re-running reproduces the bytes.
    let out2 = dir.join("out2");
    binary()
        .args(["run", "--scenario"])
        .arg(&scenario_path)
        .arg("--out")
        .arg(&out2)
        .status()
        .unwrap();
    let a = std::fs::read(out.join("report.json")).unwrap();
    let b = std::fs::read(out2.join("report.json")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn binary_uses_scenario_output_field_when_out_flag_is_absent() {
    let dir = tmp_dir("outfield");
    let out = dir.join("from-field");
    let scenario_path = dir.join("scenario.json");
    std::fs::write(
        &scenario_path,
        format!(
            r#"{{"suite":"snowflake","seed":3,"params":{{"alpha":0.5,"meshes":[0.01]}},"output":{}}}"#,
            serde_json::to_string(out.to_str().unwrap()).unwrap()
        ),
    )
    .unwrap();
    let status = binary()
        .args(["run", "--scenario"])
        .arg(&scenario_path)
        .status()
        .unwrap();
    assert!(status.success());
    assert!(out.join("report.json").exists());
}

#[test]
fn binary_exits_nonzero_when_a_verdict_fails() {
    // eps near 1 breaks the constant-rate verdict: the asymptotic regime
    // has not set in, which must surface as a failed verdict, not a crash.
    let dir = tmp_dir("fail");
    let scenario_path = dir.join("scenario.json");
    std::fs::write(
        &scenario_path,
        r#"{"suite":"v-eps","seed":3,"params":{"eps_list":[1.0,0.5]}}"#,
    )
    .unwrap();
    let status = binary()
        .args(["run", "--scenario"])
        .arg(&scenario_path)
        .arg("--out")
        .arg(dir.join("out"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
}

#[test]
fn binary_validate_and_list() {
    let dir = tmp_dir("validate");
    let good = dir.join("good.json");
    std::fs::write(&good, r#"{"suite":"u-eps","params":{"eps_list":[0.05],"k":2}}"#).unwrap();
    assert!(binary()
        .args(["validate", "--scenario"])
        .arg(&good)
        .status()
        .unwrap()
        .success());

    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"suite":"u-eps","params":{"k":2.5}}"#).unwrap();
    let status = binary()
        .args(["validate", "--scenario"])
        .arg(&bad)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));

    let out = binary().arg("list").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for entry in catalog::SUITES {
        assert!(text.contains(entry.name));
    }
}
