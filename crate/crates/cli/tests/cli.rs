use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hql(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hql"))
        .args(args)
        .env_remove("HQL_Q")
        .env_remove("HQL_MODE")
        .env_remove("HQL_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json")
}

fn validate(report: &Value) {
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_path()).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(report).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}");
}

#[test]
fn classify_hyperbolic_prints_both_sizes() {
    let o = hql(&["classify", "--q", "2", "--coeffs", "0,0,1,0,0,0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["species"], "hyperbolic");
    assert!(r["case"].as_str().unwrap().starts_with('C'));
    assert_eq!(r["size_fast"], r["size_oracle"]);
    assert_eq!(r["size_fast"], 5);
}

#[test]
fn classify_reports_reducible() {
    let o = hql(&["classify", "--q", "2", "--coeffs", "0,0,0,0,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("species: reducible"));
    assert!(!stdout(&o).contains("size (fast)"));
}

#[test]
fn classify_without_oracle_omits_oracle_size() {
    let o = hql(&["classify", "--q", "4", "--coeffs", "10+e*00,1,0,0,0,0", "--no-oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("size (fast)"));
    assert!(!text.contains("size (oracle)"));
}

#[test]
fn classify_rejects_bad_coefficients() {
    assert_eq!(hql(&["classify", "--q", "2", "--coeffs", "0,0,1"]).status.code(), Some(2));
    assert_eq!(hql(&["classify", "--q", "2", "--coeffs", "0,0,9,0,0,0"]).status.code(), Some(2));
    assert_eq!(hql(&["classify", "--q", "3", "--coeffs", "0,0,1,0,0,0"]).status.code(), Some(2));
}

#[test]
fn verify_report_matches_schema_and_is_stable_across_workers() {
    let base = ["verify", "--q", "4", "--mode", "random", "--samples", "3000", "--seed", "11"];
    let one = hql(&[&base[..], &["--workers", "1"]].concat());
    let four = hql(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(one.stdout, four.stdout);
    let r: Value = serde_json::from_slice(&one.stdout).unwrap();
    validate(&r);
    assert_eq!(one.status.code(), Some(if r["pass"] == true { 0 } else { 1 }));
    assert_eq!(r["instances"], 3000);
    assert_eq!(r["run"]["seed"], 11);
    assert_eq!(r["oracle"]["mismatches"], 0);
}

#[test]
fn failing_report_still_matches_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q2.json");
    let o = hql(&["verify", "--q", "2", "--out", path.to_str().unwrap()]);
    assert!(stdout(&o).is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    validate(&r);
    assert_eq!(o.status.code(), Some(if r["pass"] == true { 0 } else { 1 }));
    assert_eq!(r["instances"], 4096);
    assert_eq!(r["oracle"]["checked"], 4032);
}

#[test]
fn normalized_cone_families_at_q4() {
    let o = hql(&["verify", "--q", "4", "--mode", "normalized", "--family", "cone-point,cone-line"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    validate(&r);
    let cone = &r["species"]["cone"];
    assert_eq!(cone["observed"], serde_json::json!([53, 61, 69, 77, 93]));
    assert_eq!(cone["complete"], true);
    assert!(r["species"].get("elliptic").is_none());
}

#[test]
fn csv_has_fixed_header_and_one_row_per_instance() {
    let o = hql(&["verify", "--q", "2", "--mode", "random", "--samples", "50", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "q,a,b,c,d,e,f,species,cinf,case,size_fast,size_oracle,ovoid,permutable");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 50);
    assert!(rows.iter().all(|r| r.split(',').count() == 14 && r.starts_with("2,")));
}

#[test]
fn env_overrides_flags() {
    let o = Command::new(env!("CARGO_BIN_EXE_hql"))
        .args(["verify", "--mode", "random"])
        .env("HQL_Q", "2")
        .env("HQL_SAMPLES", "20")
        .env("HQL_SEED", "5")
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["field"]["q"], 2);
    assert_eq!(r["run"]["samples"], 20);
    assert_eq!(r["run"]["seed"], 5);
}

#[test]
fn infeasible_and_unsupported_configs_are_refused() {
    let o = hql(&["verify", "--q", "8", "--oracle", "all"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--oracle sample:N"));
    assert_eq!(hql(&["verify", "--q", "16", "--mode", "normalized"]).status.code(), Some(2));
    assert_eq!(hql(&["verify", "--q", "2", "--oracle", "some"]).status.code(), Some(2));
    assert_eq!(hql(&["extremal", "--q", "8", "--target", "ovoid"]).status.code(), Some(2));
}

#[test]
fn extremal_witnesses_at_q2() {
    let o = hql(&["extremal", "--q", "2", "--target", "ovoid", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    let w = &r["witnesses"][0];
    assert_eq!(w["size"], 5);
    assert_eq!(w["verified"], true);
    assert_eq!(w["tangent_planes_agree"], true);

    let o = hql(&["extremal", "--q", "2", "--target", "permutable", "--limit", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("size 21"));
    assert_eq!(text.matches("verified=true").count(), 2);
}
