use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramsey-rings")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}: {text:?}"));
    (out.status.code().unwrap(), v)
}

#[test]
fn divrem() {
    assert_eq!(run_json(&["divrem", "--x", "7+2i", "--z", "2+i"]), (0, json!({"q": "3-i", "r": "i"})));
    assert_eq!(run_json(&["divrem", "--x", "-5", "--z", "2"]), (0, json!({"q": "-3", "r": "1"})));
    let (code, v) = run_json(&["--ring", "quat", "divrem", "--x", "1+i+j+k", "--z", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"q": "0", "r": "1+i+j+k"}));
}

#[test]
fn config_fs() {
    let (code, v) = run_json(&["config", "--kind", "FS", "--terms", "1,2,4"]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"kind": "FS", "values": ["1", "2", "3", "4", "5", "6", "7"]}));
    let (_, v) = run_json(&["--ring", "quat", "config", "--kind", "AP", "--terms", "i,j"]);
    assert_eq!(v, json!({"kind": "AP", "values": ["-k", "k", "j", "i"], "expressions": 4}));
}

#[test]
fn build_certificate() {
    let (code, v) = run_json(&["build", "--ring", "gauss", "--set", "ideal(3)", "--seq", "ones", "--depth", "3"]);
    assert_eq!(code, 0);
    assert_eq!(
        v,
        json!({
            "blocks": [[1, 2, 3], [4, 5, 6], [7, 8, 9]],
            "terms": ["3", "3", "3"],
            "set": "ideal(3)",
            "verified": {"fs": 7, "fp": 7, "violations": []}
        })
    );
}

#[test]
fn build_not_found_exits_one() {
    let (code, v) = run_json(&["build", "--set", "residue(2; 1)", "--seq", "ones", "--depth", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"], "not_found");
    assert_eq!(v["deepest"], 1);
}

#[test]
fn quaternion_ap_build() {
    let (code, v) = run_json(&[
        "--ring", "quat", "build", "--mode", "ap", "--set", "ideal(2)", "--seq", "interleave:ones", "--depth", "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["blocks"], json!([[1, 5], [6, 10]]));
    assert_eq!(v["verified"]["violations"], json!([]));
}

#[test]
fn verify_reports_violations() {
    let (code, v) = run_json(&["verify", "--terms", "2,2", "--set", "ideal(4)"]);
    assert_eq!(code, 1);
    assert_eq!(v["pass"], false);
    let kinds: Vec<&str> = v["verified"]["violations"].as_array().unwrap().iter().map(|x| x["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["sum", "sum", "product", "product"]);
    let (code, _) = run_json(&["verify", "--terms", "3,3,3", "--set", "ideal(3)"]);
    assert_eq!(code, 0);
}

#[test]
fn extraction() {
    let (code, v) = run_json(&["extract", "--seq", "ones", "--z", "2+i"]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"z": "2+i", "H": [1, 2, 3, 4, 5], "sum": "5", "strategy": "A"}));
    let (_, v) = run_json(&["extract", "--seq", "ones", "--z", "2+i", "--strategy", "B"]);
    assert_eq!(v["H"], json!([1, 2, 3, 4, 5]));
    let (code, _) = run_json(&["extract", "--terms", "1,1,1", "--z", "2+i"]);
    assert_eq!(code, 1);
    let (_, v) = run_json(&["union-extract", "--seq", "naturals", "--seq", "ones", "--z", "3", "--count", "3"]);
    assert_eq!(v["blocks"], json!([[1, 2, 3], [4, 5, 6], [7, 8, 9]]));
}

#[test]
fn harness_commands() {
    let (_, v) = run_json(&["schur", "--n", "4"]);
    assert_eq!(v["result"], "avoidable");
    assert_eq!(v["coloring"], json!([0, 1, 1, 0]));
    let (_, v) = run_json(&["schur", "--n", "5"]);
    assert_eq!(v["result"], "forced");
    let (code, v) = run_json(&["hindman", "--domain", "1..7", "--k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["fs"], json!(["1", "2", "3", "4", "5", "6", "7"]));
    let (_, v) = run_json(&["pspp", "--terms", "1,2", "--coloring", "parity"]);
    assert_eq!(v["monochromatic"], false);
    let (_, v) = run_json(&["pspp", "--terms", "2,4", "--coloring", "parity"]);
    assert_eq!(v["monochromatic"], true);
}

#[test]
fn enumeration_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ramsey-rings"))
        .args(["schur", "--n", "10"])
        .env("RAMSEY_RINGS_MAX_ENUM", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds cap 100"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [&["frobnicate"][..], &["divrem", "--x", "1"], &["divrem", "--x", "1", "--z", "0"], &[
        "build", "--set", "ideal(", "--seq", "ones", "--depth", "2",
    ]] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn sequence_file() {
    let dir = std::env::temp_dir().join(format!("ramsey-rings-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("seq.txt");
    std::fs::write(&path, "1+i\n# comment\n\n3\n1-i\n1\n").unwrap();
    let (code, v) = run_json(&["extract", "--file", path.to_str().unwrap(), "--z", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["H"], json!([1, 2, 3, 4]));
    assert_eq!(v["sum"], "6");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn jsonl_and_batch() {
    let out = run(&["--jsonl", "divrem", "--x", "3", "--z", "2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"q\":\"1\",\"r\":\"1\"}\n");

    let mut child = Command::new(env!("CARGO_BIN_EXE_ramsey-rings"))
        .arg("batch")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"schur --n 5\n\nverify --terms 1 --set 'ideal(2)'\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let lines: Vec<Value> =
        String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["output"]["result"], "forced");
    assert_eq!(lines[1]["exit"], 1);
}
