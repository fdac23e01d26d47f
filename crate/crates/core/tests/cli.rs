use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley-census"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn g_count_and_exit_codes() {
    assert_eq!(json(&run(&["g-count", "--d", "3", "--m", "3"]))["count"], 2);
    assert_eq!(run(&["g-count", "--d", "3", "--m", "4"]).status.code(), Some(2));
    assert_eq!(run(&["build-quotient", "--c", "3", "--coset-cap", "100"]).status.code(), Some(3));
    assert_eq!(run(&["grr-pipeline", "--c", "3", "--m", "12"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn quotient_and_series() {
    let q = json(&run(&["build-quotient", "--c", "2"]));
    assert_eq!(q["order"], 64);
    let s = json(&run(&["series", "--c", "3"]));
    assert_eq!(s["series"]["gamma_ranks"], serde_json::json!([3, 3, 5]));
}

#[test]
fn count_subspaces_with_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("swap.txt");
    std::fs::write(&path, "4 4\n0100\n1000\n0001\n0010\n").unwrap();
    let plain = json(&run(&["count-subspaces", "--r", "4", "--s", "2"]));
    assert_eq!(plain["subspaces"], "35");
    let out = json(&run(&["count-subspaces", "--r", "4", "--s", "2", "--matrix", path.to_str().unwrap()]));
    assert_eq!(out["group_order"], 2);
    let moved: u32 = out["moved_by_all"].as_str().unwrap().parse().unwrap();
    assert!(moved < 35);
}

#[test]
fn pipelines_report_and_crosscheck() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("store");
    let store_s = store.to_str().unwrap();
    let grr = json(&run(&["grr-pipeline", "--c", "3", "--m", "7", "--out", store_s]));
    assert_eq!(grr["records"], 2);
    json(&run(&["five-arc", "--k-max", "0", "--out", store_s]));
    let report = json(&run(&["report", store_s]));
    assert_eq!(report["records"], 3);
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows[0]["order"], 30);
    assert_eq!(rows[0]["count_5at"], 1);
    assert_eq!(rows[1]["count_grr"], 2);
    // rerunning leaves the store unchanged
    let again = json(&run(&["grr-pipeline", "--c", "3", "--m", "7", "--out", store_s]));
    assert_eq!(again["store"]["added"], 0);

    let census = dir.path().join("census.g6");
    std::fs::write(&census, "C~\nEh?G\n").unwrap();
    let cross = json(&run(&["crosscheck", census.to_str().unwrap()]));
    assert_eq!(cross["count"], 1);
    std::fs::write(&census, "C~\nC\n").unwrap();
    let bad = run(&["crosscheck", census.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 2"));
}

#[test]
fn corrupt_store_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("store");
    let store_s = store.to_str().unwrap();
    json(&run(&["five-arc", "--k-max", "0", "--out", store_s]));
    let index = std::fs::read_to_string(store.join("index.tsv")).unwrap();
    let id = index.lines().nth(1).unwrap().split('\t').next().unwrap().to_string();
    std::fs::write(store.join("records").join(format!("{id}.g6")), "C~\n").unwrap();
    let out = run(&["report", store_s]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains(&id));
}
