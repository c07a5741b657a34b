use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_macmahon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (out.status.code().unwrap(), v)
}

#[test]
fn vuletic_at_small_orders() {
    let (code, v) = run_json(&[
        "verify",
        "vuletic",
        "--s-order",
        "4",
        "--q-order",
        "4",
        "--t-order",
        "4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["match"], true);
    assert_eq!(v["num_partitions"], 24);
    assert_eq!(v["orders"], serde_json::json!({ "q": 4, "s": 4, "t": 4 }));
}

#[test]
fn theorem3_rank_two() {
    let (code, v) = run_json(&[
        "verify",
        "theorem3",
        "--r",
        "2",
        "--t-order",
        "5",
        "--q-order",
        "8",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["match"], true);
    let (code, v) = run_json(&["verify", "theorem3", "--r", "inf"]);
    assert_eq!(code, 0);
    assert_eq!(v["r"], "inf");
}

#[test]
fn bb_prints_both_polynomials() {
    let (code, v) = run_json(&["verify", "bb", "--r", "1", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["lhs"], v["rhs"]);
    assert_eq!(v["lhs_display"], "L^4 + L^5 + L^6");
    assert_eq!(v["components"], 3);
}

#[test]
fn other_verifications() {
    for args in [
        &["verify", "theorem2"][..],
        &["verify", "corollary"],
        &["verify", "macmahon"],
    ] {
        let (code, v) = run_json(args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(v["match"], true, "{args:?}");
    }
    let (_, v) = run_json(&["verify", "macmahon", "--s-order", "8"]);
    assert_eq!(v["enumerated"][8], "160");
}

#[test]
fn enumerate_plane_partitions() {
    let (code, v) = run_json(&["enumerate", "pp", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 6);
    assert_eq!(v["items"][0], "[[3]]");
    assert_eq!(v["items"][5], "[[1],[1],[1]]");
    let (_, v) = run_json(&["enumerate", "pp", "--n", "4", "--max-entry", "1"]);
    assert_eq!(v["count"], 5);
}

#[test]
fn classes_table() {
    let (code, v) = run_json(&["classes", "--r", "2", "--n", "2"]);
    assert_eq!(code, 0);
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 3);
    assert_eq!(comps[1]["partition"], "[[1,1]]");
    assert_eq!(comps[1]["class"], serde_json::json!(["1", "1"]));
    assert_eq!(comps[1]["d_plus"], 5);
    let out = run(&["classes", "--r", "2", "--n", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("partition,chi,d_plus,class"));
    assert!(text.contains("\"[[1,1]]\",1,5,1 + L"));
}

#[test]
fn tangent_weights() {
    let (code, v) = run_json(&["tangent", "--tuple", "[[1],[ ]]", "--alpha", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["dimension"], 4);
    assert_eq!(v["d_plus"], 3);
    assert_eq!(v["neutral"], 1);
    assert_eq!(v["weights"].as_array().unwrap().len(), 4);
}

#[test]
fn tangent_with_a_small_alpha_reports_a_mismatch() {
    let (code, v) = run_json(&["tangent", "--tuple", "[[1]]", "--alpha", "-5"]);
    assert_eq!(code, 1);
    assert_eq!(v["match"], false);
}

#[test]
fn count_points() {
    let (code, v) = run_json(&["count-points", "--grid", "[[2,1],[1]]", "--p", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], v["predicted"]);
    let (code, v) = run_json(&[
        "count-points",
        "--chain-mu",
        "[2,1]",
        "--chain-nu",
        "[1,1]",
        "--p",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], "16");
    let (code, v) = run_json(&[
        "count-points",
        "--chain-mu",
        "[2,2]",
        "--chain-nu",
        "[2,1]",
        "--p",
        "2",
        "--h",
        "[[[1,1]]]",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["match"], true);
}

#[test]
fn refusals_and_usage_errors() {
    let out = run(&[
        "count-points",
        "--chain-mu",
        "[3,3]",
        "--chain-nu",
        "[3,3]",
        "--p",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    for args in [
        &["count-points", "--grid", "[[1,2]]", "--p", "2"][..],
        &["count-points", "--grid", "[[1]]", "--p", "4"],
        &["count-points", "--p", "2"],
        &["tangent", "--tuple", "[[1,2]]"],
        &["verify", "nonsense"],
        &["classes", "--r", "1"],
        &["all"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify",
        "theorem2",
        "--max-weight",
        "4",
        "--l-order",
        "10",
        "--jobs",
        "3",
    ];
    let a = run(&args);
    let b = run(&args[..6]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let names: Vec<&str> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["partition"].as_str().unwrap())
        .collect();
    assert_eq!(names[0], "[]");
    assert_eq!(names[1], "[[1]]");
}

#[test]
fn table_format() {
    let out = run(&["verify", "bb", "--r", "2", "--n", "2", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("side"));
    assert!(lines[1].starts_with("----"));
    assert_eq!(lines.len(), 4);
}

#[test]
fn full_suite() {
    let (code, v) = run_json(&["all", "--desk-scale"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 9);
}
