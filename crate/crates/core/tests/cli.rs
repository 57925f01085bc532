use std::process::{Command, Output};

use serde_json::Value;

fn minorfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minorfree")).args(args).output().unwrap()
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn generate_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("grid.txt");
    let truth = dir.path().join("truth.json");
    let out = minorfree(&[
        "generate",
        "--family",
        "grid",
        "--n",
        "36",
        "--wmax",
        "3",
        "--out",
        graph.to_str().unwrap(),
        "--truth",
        truth.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let t: Value = serde_json::from_str(&std::fs::read_to_string(&truth).unwrap()).unwrap();
    assert_eq!(t["ham_distance"], 0);

    let out = minorfree(&["build-spanner", "--algorithm", "kruskal", "--graph", graph.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let recs = records(&out);
    assert_eq!(recs.first().unwrap()["record"], "header");
    assert_eq!(recs.last().unwrap()["record"], "aggregate");
}

#[test]
fn test_ham_accepts_a_grid_and_is_repeatable() {
    let args = ["test-ham", "--family", "grid", "--n", "400", "--oracle", "exhaustive", "--k", "16", "--trials", "3"];
    let a = minorfree(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let runs: Vec<_> = records(&a).into_iter().filter(|r| r["record"] == "run").collect();
    assert_eq!(runs.len(), 3);
    assert!(runs.iter().all(|r| r["verdict"] == "accept" && r["error"].is_null()));
    assert_eq!(a.stdout, minorfree(&args).stdout);
}

#[test]
fn scaled_parameters_need_ack() {
    let args = ["test-ham", "--family", "grid", "--n", "100", "--oracle", "ball", "--radius", "1", "--cap", "10"];
    let out = minorfree(&args);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("scaled-mode-ack"));
    let mut acked = args.to_vec();
    acked.push("--scaled-mode-ack");
    assert!(minorfree(&acked).status.success());
}

#[test]
fn bad_input_exit_codes() {
    assert_eq!(minorfree(&["generate", "--family", "moebius", "--n", "9"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "three edges\n").unwrap();
    let out = minorfree(&["build-spanner", "--algorithm", "kruskal", "--graph", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let recs = records(&out);
    assert!(recs[1]["error"].as_str().unwrap().contains("line 1"));
}

#[test]
fn run_suite_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().join("suite.toml");
    std::fs::write(
        &suite,
        "[suite]\nseeds = [1, 2]\n\n[[experiment]]\nfamily = \"grid\"\nn = [36, 64]\nwmax = 2\ntask = \"kruskal\"\n",
    )
    .unwrap();
    let csv = dir.path().join("out.csv");
    let out = minorfree(&["run-suite", suite.to_str().unwrap(), "--format", "csv", "--out", csv.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let runs = reader.records().filter(|r| &r.as_ref().unwrap()[0] == "run").count();
    assert_eq!(runs, 4);
}
