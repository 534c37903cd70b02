use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, Output};

fn tff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tff"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn core_example(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/examples").join(name);
    p.to_string_lossy().into_owned()
}

fn data(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    p.to_string_lossy().into_owned()
}

fn quadrant_column(csv: &str) -> BTreeMap<String, usize> {
    let mut r = csv::Reader::from_reader(csv.as_bytes());
    let mut out = BTreeMap::new();
    for rec in r.records() {
        *out.entry(rec.unwrap()[3].to_string()).or_insert(0) += 1;
    }
    out
}

#[test]
fn kostant_sp4_middle_weight() {
    let o = tff(&["kostant", "C", "2", "--levi", "", "--lambda", "0,0", "--nu", "middle"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let q = quadrant_column(&stdout(&o));
    let want: BTreeMap<String, usize> =
        [("{}", 3), ("{2}", 1), ("{1,2}", 3), ("{1}", 1)].iter().map(|(k, v)| (k.to_string(), *v)).collect();
    assert_eq!(q, want);
}

#[test]
fn kostant_minus_infinity_and_levi_rows() {
    let o = tff(&["kostant", "A", "1", "--levi", "", "--lambda", "3", "--nu", "minus-inf"]);
    let q = quadrant_column(&stdout(&o));
    assert_eq!(q.len(), 1);
    assert_eq!(q["{}"], 2);
    let o = tff(&["kostant", "A", "2", "--levi", "1", "--lambda", "0,0", "--nu", "middle"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 3);
}

#[test]
fn kostant_json_round_trips() {
    let o = tff(&["kostant", "C", "2", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 8);
    assert_eq!(rows[0]["word"], "e");
    assert_eq!(rows[7]["length"], 4);
}

#[test]
fn eval_examples() {
    let o = tff(&["eval", &data("empty.json")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("0"));

    let o = tff(&["eval", &core_example("a1_two_strata.json"), "--explain"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("9/4"));
    assert!(out.contains("stratum I={}: 1/4"));
    assert!(out.contains("stratum I={1}: 2"));
}

#[test]
fn eval_rejects_inconsistent_torus_factor() {
    let o = tff(&["eval", &core_example("lint_torus_mismatch.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("strata[0].double_cosets[0].classes[0].torus_rep"));
}

#[test]
fn eval_reports_json_paths_for_schema_errors() {
    let o = tff(&["eval", &data("bad_type.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("strata[0].double_cosets[0].classes[0].torus_rep.magnitudes[0]"), "{}", stderr(&o));
}

#[test]
fn validate_warns_but_succeeds() {
    let o = tff(&["validate", &core_example("lint_nonelliptic_levi.json")]);
    assert!(o.status.success());
    assert!(stderr(&o).starts_with("warning: strata[0]:"));
}

#[test]
fn oracle_examples() {
    let o = tff(&["oracle", "ce", "A", "2", "--levi", "", "--lambda", "0,0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "MATCH (1,2,2,1)");

    let o = tff(&["oracle", "classes", "2"]);
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(String::from).collect();
    assert_eq!(rows, ["-2,-4,1", "-1,-7,1", "0,-8,1", "1,-7,1", "2,-4,1"]);

    let o = tff(&["oracle", "forms", "--", "-12"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1 + 2);
}

#[test]
fn oracle_dataset_is_valid_json() {
    let o = tff(&["oracle", "dataset", "3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "tff-dataset/1");
}

#[test]
fn exit_codes() {
    assert_eq!(tff(&["kostant", "Q", "2"]).status.code(), Some(1));
    assert_eq!(tff(&["kostant", "A", "2", "--lambda", "1"]).status.code(), Some(1));
    assert_eq!(tff(&["oracle", "forms", "--", "-5"]).status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_tff"))
        .args(["kostant", "A", "3"])
        .env("TFF_GROUP_ORDER_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["kostant", "C", "2", "--lambda", "1,1"],
        vec!["oracle", "ce", "C", "2", "--format", "csv"],
        vec!["check", "--seed", "7", "--count", "5"],
    ] {
        let a = tff(&args);
        let b = tff(&args);
        assert!(a.status.success(), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
