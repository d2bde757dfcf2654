use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sftgroup"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const Z4: &str = r#"{"matrix":[[1,0,1,0,1,0],[0,1,0,1,0,1],[1,1,1,0,0,0],[1,1,0,1,0,0],[1,1,0,0,1,0],[1,1,0,0,0,1]],
    "generators":["(1 2)(3 4 5 6)"]}"#;

#[test]
fn reduce_z4() {
    let v = json(&run(&["reduce"], Z4));
    assert_eq!(v["result"]["right"]["matrix"], serde_json::json!([[1, 2], [2, 1]]));
    assert_eq!(v["result"]["left"]["matrix"], serde_json::json!([[1, 1], [4, 1]]));
    assert_eq!(v["input"]["generators"], serde_json::json!(["(1 2)(3 4 5 6)"]));
    assert_eq!(v["format"], "sftgroup-report/1");
}

#[test]
fn input_from_file() {
    let path = std::env::temp_dir().join(format!("sftgroup-cli-test-{}.json", std::process::id()));
    std::fs::write(&path, Z4).unwrap();
    let out = run(&["invariants", "--input", path.to_str().unwrap(), "--format", "text", "--max-n", "3"], "");
    std::fs::remove_file(&path).unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success());
    assert!(text.contains("BF group: Z/2 + Z/2"), "{text}");
    assert!(text.contains("BF group: Z/4"), "{text}");
    assert!(text.contains("traces: 2, 10, 26\n"), "{text}");
}

#[test]
fn classify_swapped_two_shift() {
    let v = json(&run(&["classify"], r#"{"matrix":[[1,1],[1,1]],"generators":["(1 2)"]}"#));
    assert_eq!(v["result"]["verdict"], "constant-to-one");
    assert_eq!(v["result"]["right_matrix"], serde_json::json!([[2]]));
}

#[test]
fn trefoil_bundle_counts() {
    let v = json(&run(&["bundle-counts"], r#"{"preset":"trefoil","group":"Z2","max_n":6}"#));
    assert_eq!(v["result"]["counts"], serde_json::json!([1, 1, 4, 1, 1, 4]));
    assert_eq!(v["result"]["recurrence_holds"], true);
}

#[test]
fn hnn_document_matches_preset() {
    let hnn = r#"{"group":"S3","hnn":{"b_gens":2,"u_gens":["a","b"],"v_gens":["b","Ab"],"phi_images":["b","Ab"]}}"#;
    let a = json(&run(&["tqft"], hnn));
    let b = json(&run(&["tqft"], r#"{"group":"S3","preset":"trefoil"}"#));
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["result"]["matrix"].as_array().unwrap().len(), 11);
}

#[test]
fn group_by_table_and_permutations() {
    let table = r#"{"preset":"trefoil","group":{"names":["e","x"],"table":[[0,1],[1,0]]},"max_n":6}"#;
    let perms = r#"{"preset":"trefoil","group":{"degree":2,"permutations":["(1 2)"]},"max_n":6}"#;
    for doc in [table, perms] {
        assert_eq!(json(&run(&["bundle-counts"], doc))["result"]["counts"], serde_json::json!([1, 1, 4, 1, 1, 4]));
    }
}

#[test]
fn verify_sse_accepts_and_rejects() {
    let good = r#"{"certificate":{"steps":[{"a":[[2]],"b":[[1,1],[1,1]],"r":[[1,1]],"s":[[1],[1]]}]}}"#;
    assert_eq!(json(&run(&["verify-sse"], good))["result"]["valid"], true);
    let bad = r#"{"certificate":{"steps":[{"a":[[3]],"b":[[1,1],[1,1]],"r":[[1,1]],"s":[[1],[1]]}]}}"#;
    let out = run(&["verify-sse"], bad);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("certificate.steps[0]"));
}

#[test]
fn exit_codes() {
    // Input errors.
    assert_eq!(run(&["reduce"], "").status.code(), Some(1));
    assert_eq!(run(&["reduce"], "{").status.code(), Some(1));
    let out = run(&["reduce"], r#"{"matrix":[[1,-1],[1,1]]}"#);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("matrix[0][1]"));
    assert_eq!(run(&["nonsense"], "").status.code(), Some(1));
    assert_eq!(run(&["reduce"], r#"{"command":"classify","matrix":[[1]]}"#).status.code(), Some(1));
    // Mathematical preconditions.
    let reducible = r#"{"matrix":[[1,0,1],[0,1,1],[0,0,1]],"generators":["(1 2)"]}"#;
    assert_eq!(run(&["classify"], reducible).status.code(), Some(2));
    assert_eq!(run(&["reduce"], r#"{"matrix":[[1,1],[0,1]],"generators":["(1 2)"]}"#).status.code(), Some(2));
    assert_eq!(run(&["witness"], r#"{"matrix":[[1,1],[1,1]],"generators":["(1 2)"]}"#).status.code(), Some(2));
    // Caps and limits.
    assert_eq!(run(&["quotient-counts", "--cap", "3"], Z4).status.code(), Some(3));
    assert_eq!(run(&["repshift", "--limit", "10"], r#"{"preset":"trefoil","group":"S3"}"#).status.code(), Some(3));
    // Help is not an error.
    assert_eq!(run(&["--help"], "").status.code(), Some(0));
}

#[test]
fn flags_override_document() {
    let v = json(&run(&["burnside", "--max-n", "3"], r#"{"matrix":[[1,1],[1,1]],"generators":["(1 2)"],"max_n":9}"#));
    assert_eq!(v["result"]["counts"], serde_json::json!([1, 2, 4]));
    assert_eq!(v["input"]["max_n"], 3);
}

#[test]
fn witness_windows() {
    let v = json(&run(&["witness"], r#"{"matrix":[[1,1,1],[1,1,0],[1,0,1]],"generators":["(2 3)"],"m":2}"#));
    let windows = v["result"]["windows"].as_array().unwrap();
    assert_eq!(windows.len(), 2);
    assert_eq!(v["result"]["orbits_distinct"], true);
}

#[test]
fn split_then_transport() {
    let doc = r#"{"matrix":[[1,1],[1,1]],"generators":["(1 2)"],
        "splits":[{"direction":"in","partitions":[[[1],[2]],[[1],[2]]]}]}"#;
    let v = json(&run(&["split"], doc));
    assert_eq!(v["result"]["verified"], true);
    assert_eq!(v["result"]["matrix"].as_array().unwrap().len(), 4);
    let t = json(&run(&["transport"], doc));
    assert_eq!(t["result"]["invariants_agree"], true);
    let bad = r#"{"matrix":[[1,1],[1,1]],"generators":["(1 2)"],
        "splits":[{"direction":"out","partitions":[[[1],[2]],[[1,2]]]}]}"#;
    assert_eq!(run(&["split"], bad).status.code(), Some(2));
}
