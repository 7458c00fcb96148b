use std::path::Path;
use std::process::{Command, Output};

use nodalcodes::bounds::BoundReport;
use nodalcodes::classify::TableRecord;
use nodalcodes::evencode::EvenSetCode;
use nodalcodes::nodal::DefectReport;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_nodalcodes"));
    c.env_remove("NODALCODES_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn bounds_for_degree_eight() {
    let o = run(&["bounds", "--degree", "8", "--mu", "168", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: BoundReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((r.beauville, r.improved, r.beauville_printed), (18, 19, 16));
    let text = stdout(&run(&["bounds", "--degree", "8", "--mu", "168"]));
    assert!(text.contains("beauville: 18") && text.contains("improved: 19"));
    let text = stdout(&run(&["bounds", "--degree", "8", "--mu", "168", "--paper-closed-form"]));
    assert!(text.starts_with("beauville: 16"));
}

#[test]
fn classification_output_round_trips_through_code_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["classify-quartic", "--mu", "14", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let table: TableRecord = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(table.entries.len(), 1);
    assert_eq!(table.entries[0].profile, "[14,4,{6_4,8,10}]");
    assert!(table.excluded.is_empty());
    let code = serde_json::to_string(&table.entries[0].code).unwrap();
    let path = write(dir.path(), "c.json", &code);
    let info = json(&run(&["code", "info", &path, "--json"]));
    assert_eq!(info["profile"], "[14,4,{6_4,8,10}]");
    assert_eq!(info["canonical"], table.entries[0].canonical.as_str());
    assert_eq!(info["quartic_admissible"], true);

    let audited: TableRecord = serde_json::from_slice(&run(&["classify-quartic", "--mu", "14", "--audit", "--json"]).stdout).unwrap();
    assert_eq!(audited.entries, table.entries);
    assert!(!audited.excluded.is_empty());
}

#[test]
fn code_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", r#"{"mu":8,"generators":[{"parity":"weak","support":[0,1,2,3,4,5]}]}"#);
    let b = write(dir.path(), "b.json", r#"{"mu":8,"generators":[{"parity":"weak","support":[2,3,4,5,6,7]}]}"#);
    let c = write(dir.path(), "c.json", r#"{"mu":8,"generators":[{"parity":"strict","support":[0,1,2,3,4,5]}]}"#);
    assert_eq!(json(&run(&["code", "isomorphic", &a, &b, "--json"]))["isomorphic"], true);
    assert_eq!(json(&run(&["code", "isomorphic", &a, &c, "--json"]))["isomorphic"], false);
    let canon = json(&run(&["code", "canonical", &a, "--json"]));
    let rep: EvenSetCode = serde_json::from_value::<nodalcodes::evencode::CodeFile>(canon["representative"].clone())
        .unwrap()
        .into_code()
        .unwrap();
    assert_eq!(rep.dim(), 1);
    let info = json(&run(&["code", "info", &c, "--json"]));
    assert_eq!(info["quartic_admissible"], false);
    let bad = write(dir.path(), "bad.json", r#"{"mu":8,"generators":[{"parity":"weak","support":[9]}]}"#);
    assert_eq!(run(&["code", "info", &bad]).status.code(), Some(2));
}

#[test]
fn defect_from_counts_and_nodes() {
    let r: DefectReport = serde_json::from_slice(&run(&["defect", "--degree", "6", "--mu", "65", "--dim-m", "4", "--json"]).stdout).unwrap();
    assert_eq!(r.defect, 13);
    let r: DefectReport = serde_json::from_slice(&run(&["defect", "--degree", "4", "--mu", "11", "--dim-m", "0", "--json"]).stdout).unwrap();
    assert_eq!(r.defect, 1);

    // 11 points with no quadric through them
    let dir = tempfile::tempdir().unwrap();
    let nodes = r#"{"degree":4,"field":"rational","nodes":[
        [1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1],[1,1,1,1],[1,2,3,4],
        [1,3,9,27],[2,1,5,7],[1,-1,2,-3],[3,1,4,1],["1/2",5,9,2]]}"#;
    let path = write(dir.path(), "n.json", nodes);
    let r: DefectReport = serde_json::from_slice(&run(&["defect", "--nodes", &path, "--json"]).stdout).unwrap();
    assert_eq!((r.mu, r.dim_m, r.estimate, r.defect), (11, 0, -1, 1));
    let v = json(&run(&["vanishing-dim", "--nodes", &path, "--form-degree", "3", "--json"]));
    assert_eq!(v["dimension"], 20 - 11);
    assert_eq!(run(&["defect", "--degree", "6", "--nodes", &path]).status.code(), Some(2));
}

#[test]
fn missing_and_malformed_inputs_exit_two() {
    assert_eq!(run(&["defect", "--degree", "4", "--nodes", "missing.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "junk.json", "{ not json");
    let o = run(&["vanishing-dim", "--nodes", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("junk.json"));
    assert_eq!(run(&["bounds", "--degree", "5", "--mu", "3"]).status.code(), Some(2));
    assert_eq!(run(&["classify-quartic", "--mu", "17"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["bounds", "--degree", "8"]).status.code(), Some(1));
    assert_eq!(run(&["defect", "--degree", "4"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let o = bin().args(["hilbert-check"]).env("NODALCODES_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn node_verification() {
    let dir = tempfile::tempdir().unwrap();
    let surface = "w^2*x^2 + w^2*y^2 + w^2*z^2 + x^4 + y^4 + z^4";
    let good = write(
        dir.path(),
        "good.json",
        &format!(r#"{{"degree":4,"field":"rational","surface":"{surface}","nodes":[[0,0,0,1]]}}"#),
    );
    let o = run(&["verify-nodes", "--nodes", &good, "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["all_nodes"], true);
    let bad = write(dir.path(), "bad.json", r#"{"degree":4,"field":"rational","nodes":[[0,0,0,1],[1,0,0,0]]}"#);
    let eq = write(dir.path(), "f.txt", &format!("{surface}\n"));
    let o = run(&["verify-nodes", "--nodes", &bad, "--surface", &eq, "--json"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["verified"], serde_json::json!([true, false]));
    assert_eq!(run(&["verify-nodes", "--nodes", &bad]).status.code(), Some(2));
}

#[test]
fn symmetroid_scan_is_deterministic_and_round_trips() {
    let args = ["symmetroid-scan", "--prime", "101", "--seed", "11", "--json"];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let threaded = bin().args(args).env("NODALCODES_THREADS", "1").output().unwrap();
    assert_eq!(first.stdout, threaded.stdout);
    assert_eq!(first.stdout, run(&args).stdout);
    let v = json(&first);
    assert_eq!(v["scan"]["points"].as_array().unwrap().len(), 10);
    assert_eq!(v["certificate"]["rank"], 10);

    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "m.json", &v["matrix"].to_string());
    let again = json(&run(&["symmetroid-scan", "--matrix", &path, "--json"]));
    assert_eq!(again["scan"], v["scan"]);

    let diag = write(
        dir.path(),
        "diag.json",
        r#"{"prime":5,"upper_triangle":["x","0","0","0","y","0","0","z","0","w"]}"#,
    );
    let o = run(&["symmetroid-scan", "--matrix", &diag, "--json"]);
    assert_eq!(o.status.code(), Some(3));
    let v = json(&o);
    assert_eq!(v["scan"]["degenerate"], true);
    assert_eq!(v["scan"]["points"].as_array().unwrap().len(), 28);
}

#[test]
fn hilbert_check() {
    let o = run(&["hilbert-check", "--order", "6", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["coefficients"], serde_json::json!(["0", "0", "0", "10", "25", "46", "74"]));
    assert_eq!(v["check"], true);
}
