use std::io::Write;
use std::process::{Command, Output, Stdio};

fn mixmult(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mixmult"))
        .args(args)
        .arg("--no-cache")
        .env_clear()
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

const TRIANGLE: &str = "[ring]\nd = 2\np = 1\n\n[modules]\nF = maximal\nE1 = maximal\n\n[task]\nkind = lengths\ngrid = 1..4, 0, 0\n";

#[test]
fn success_writes_csv_to_stdout() {
    let out = mixmult(&["--job", "-", "--format", "csv"], TRIANGLE);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let values: Vec<&str> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(values, ["1", "3", "6", "10"]);
}

#[test]
fn task_error_exits_one() {
    let job = format!("{TRIANGLE}\n[task]\nkind = verify-teo4\nindex = (0,0,[2])\n");
    let out = mixmult(&["--job", "-", "--format", "structured"], &job);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["tasks"][1]["status"], "error");
}

#[test]
fn bad_input_exits_two() {
    let out = mixmult(&["--job", "-"], "[ring]\nd = two\np = 1\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = mixmult(&["--job", "-", "--format", "xml"], TRIANGLE);
    assert_eq!(out.status.code(), Some(2));

    let out = mixmult(&["--bogus"], "");
    assert_eq!(out.status.code(), Some(2));
}
