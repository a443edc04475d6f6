use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hessgkm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hessgkm"))
        .args(args)
        .env_remove("HESSGKM_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = hessgkm(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schema")
        .join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(path).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn validated(name: &str, args: &[&str]) -> Value {
    let out = stdout(args);
    let value: Value = serde_json::from_str(&out).unwrap();
    let errors: Vec<String> = schema(name)
        .iter_errors(&value)
        .map(|e| e.to_string())
        .collect();
    assert!(
        errors.is_empty(),
        "{args:?} does not match {name}: {errors:?}"
    );
    value
}

#[test]
fn dot_for_2134() {
    let dot = stdout(&[
        "graph", "--perm", "2134", "--hess", "3,3,4,4", "--format", "dot",
    ]);
    let nodes: Vec<&str> = dot.lines().filter(|l| l.contains("degree=")).collect();
    assert_eq!(nodes.len(), 18);
    assert_eq!(nodes.iter().filter(|l| l.contains("degree=3")).count(), 12);
    let black: Vec<&str> = nodes
        .iter()
        .filter(|l| l.contains("degree=4"))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    assert_eq!(black, ["2341", "2431", "3241", "3421", "4231", "4321"]);
    assert!(dot.contains("xlabel=\"base\""));
    assert!(dot.contains("shape=box"));
    assert!(dot.ends_with("}\n"));
}

#[test]
fn dot_with_excluded_vertices() {
    let dot = stdout(&[
        "graph",
        "--perm",
        "2134",
        "--hess",
        "3,3,4,4",
        "--show-excluded",
    ]);
    let nodes = dot
        .lines()
        .filter(|l| l.contains("label=\"") && !l.contains("--"))
        .count();
    assert_eq!(nodes, 24);
    assert_eq!(
        dot.lines()
            .filter(|l| l.contains("style=dashed") && !l.contains("--"))
            .count(),
        6
    );
}

#[test]
fn graph_csv_and_json() {
    let csv = stdout(&[
        "graph", "--perm", "2134", "--hess", "3,3,4,4", "--format", "csv",
    ]);
    assert_eq!(csv.lines().next(), Some("vertex,rank,length,degree,edges"));
    assert_eq!(csv.lines().count(), 19);
    let v = validated(
        "graph",
        &[
            "graph", "--perm", "2134", "--hess", "3,3,4,4", "--format", "json",
        ],
    );
    assert_eq!(v["vertex_count"], 18);
    assert_eq!(v["regular"], false);
    assert_eq!(v["degree_histogram"], serde_json::json!([[3, 12], [4, 6]]));
}

#[test]
fn patterns_table() {
    let text = stdout(&["patterns", "--perm", "2134", "--hess", "3,3,4,4"]);
    assert!(text
        .lines()
        .any(|l| l.starts_with("2134h") && l.ends_with("(1,2,3,4)")));
    assert_eq!(text.lines().filter(|l| l.contains(" yes ")).count(), 1);
    let v = validated(
        "patterns",
        &[
            "patterns", "--perm", "1324", "--hess", "3,3,4,4", "--format", "json",
        ],
    );
    assert!(v["patterns"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["occurs"] == false));
    let v = validated(
        "patterns",
        &[
            "patterns", "--perm", "1324", "--hess", "4,4,4,4", "--format", "json",
        ],
    );
    let hit: Vec<&Value> = v["patterns"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["occurs"] == true)
        .collect();
    assert_eq!(hit.len(), 1);
    assert_eq!(hit[0]["pattern"], "1324h");
    assert_eq!(hit[0]["witness"], "(1,2,3,4)");
}

#[test]
fn verify_main_at_four() {
    let out = hessgkm(&["verify", "--theorem", "T-main", "--n", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("PASS T-main n=4 pairs=336/336"));
    let v = validated(
        "verify",
        &[
            "verify",
            "--theorem",
            "T-main",
            "--n",
            "3-4",
            "--format",
            "json",
        ],
    );
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_every_statement_at_four() {
    let v = validated("verify", &["verify", "--n", "4", "--format", "json"]);
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 25);
}

#[test]
fn verify_csv_rows() {
    let csv = stdout(&["verify", "--n", "4", "--hess", "3,3,4,4", "--format", "csv"]);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("w,h,is_generator,regular,min_deg,max_deg,avoided(B),avoided(C),first_witness")
    );
    assert!(csv.contains("2134,\"(3,3,4,4)\",true,false,3,4,false,false,\"2134h(1,2,3,4)\"\n"));
    assert_eq!(lines.count(), 24);
}

#[test]
fn predicate_search() {
    let v = validated(
        "verify",
        &[
            "verify",
            "--predicate",
            "wellorg-converse",
            "--n",
            "4-5",
            "--format",
            "json",
        ],
    );
    let results = v["results"].as_array().unwrap();
    assert!(results[0]["counterexample"].is_null());
    assert_eq!(results[1]["counterexample"]["w"], "24351");
}

#[test]
fn query_and_profile_json() {
    let v = validated(
        "query",
        &[
            "query", "--perm", "2134", "--other", "4321", "--hess", "3,3,4,4", "--format", "json",
        ],
    );
    assert_eq!(v["is_generator"], true);
    assert_eq!(v["fixed_points"], 18);
    assert_eq!(v["comparison"]["h_bruhat_leq"], true);
    assert_eq!(v["comparison"]["h_interval"].as_array().unwrap().len(), 18);
    validated("query", &["query", "--perm", "312", "--format", "json"]);
    let v = validated("profile", &["profile", "--perm", "4651273"]);
    assert_eq!(v["y_values"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["is_well_organized"], true);
}

#[test]
fn enumerate_lists() {
    let text = stdout(&["enumerate", "--n", "4"]);
    assert_eq!(text.lines().count(), 14);
    let v = validated(
        "enumerate",
        &["enumerate", "generators", "--n", "3", "--format", "json"],
    );
    let total: usize = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["generators"].as_array().unwrap().len())
        .sum();
    assert_eq!(total, 15);
    let dot = stdout(&["enumerate", "incomparability", "--hess", "3,3,4,4"]);
    assert!(dot.starts_with("graph"));
}

#[test]
fn usage_errors() {
    for args in [
        &["graph", "--perm", "2134", "--hess", "3,3,4"][..],
        &["graph", "--perm", "2124", "--hess", "3,3,4,4"],
        &["graph", "--perm", "2134", "--hess", "3,2,4,4"],
        &[
            "graph", "--perm", "2134", "--hess", "3,3,4,4", "--format", "yaml",
        ],
        &["patterns", "--perm", "2134"],
        &["verify", "--theorem", "T-nothing", "--n", "4"],
        &["query", "--perm", "213", "--other", "2134"],
    ] {
        let out = hessgkm(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "verify",
            "--n",
            "5",
            "--theorem",
            "T-main,P-organized",
            "--format",
            "json",
            "--jobs",
            "1",
        ][..],
        &[
            "verify",
            "--n",
            "5",
            "--theorem",
            "T-main,P-organized",
            "--format",
            "json",
            "--jobs",
            "4",
        ],
    ] {
        assert_eq!(stdout(args), stdout(args));
    }
    let serial = stdout(&["verify", "--n", "5", "--format", "csv", "--jobs", "1"]);
    let parallel = stdout(&["verify", "--n", "5", "--format", "csv", "--jobs", "4"]);
    assert_eq!(serial, parallel);
    let a = stdout(&[
        "graph",
        "--perm",
        "21354",
        "--hess",
        "3,4,4,5,5",
        "--show-excluded",
    ]);
    let b = stdout(&[
        "graph",
        "--perm",
        "21354",
        "--hess",
        "3,4,4,5,5",
        "--show-excluded",
    ]);
    assert_eq!(a, b);
}
