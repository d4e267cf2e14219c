use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn vminor(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vminor"))
        .args(args)
        .current_dir(dir)
        .env_remove("VMINOR_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn with_stdin(args: &[&str], dir: &Path, input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_vminor"))
        .args(args)
        .current_dir(dir)
        .env_remove("VMINOR_OUT_DIR")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn gen_writes_graph6() {
    let dir = tempfile::tempdir().unwrap();
    let o = vminor(&["gen", "complete", "4"], dir.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o), "C~\n");
    let o = vminor(&["gen", "random", "7", "0.5", "--seed", "3", "--count", "4"], dir.path());
    assert_eq!(stdout(&o).lines().count(), 4);
    let again = vminor(&["gen", "random", "7", "0.5", "--seed", "3", "--count", "4"], dir.path());
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn gen_with_certificate_beside_output() {
    let dir = tempfile::tempdir().unwrap();
    let o = vminor(&["gen", "interfered", "2", "3", "--complete", "--out", "k.g6"], dir.path());
    assert!(o.status.success());
    let cert = fs::read_to_string(dir.path().join("k.cert.jsonl")).unwrap();
    let v: Value = serde_json::from_str(cert.lines().next().unwrap()).unwrap();
    assert_eq!(v["certificate"]["completely_interfered"], true);
    assert_eq!(v["certificate"]["x"].as_array().unwrap().len(), 2);
}

#[test]
fn oracle_finds_and_replays_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    vminor(&["gen", "cycle", "5", "--out", "c5.g6"], dir.path());
    let c4 = stdout(&vminor(&["gen", "cycle", "4"], dir.path()));
    let o = vminor(&["oracle", "c5.g6", "--target", c4.trim()], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let line = &json_lines(&o)[0];
    assert_eq!(line["contained"], true);
    let cert = fs::read_to_string(dir.path().join("c5.oracle.cert.jsonl")).unwrap();
    assert_eq!(serde_json::from_str::<Value>(cert.trim()).unwrap(), *line);

    let steps: String = line["trace"]["steps"].as_array().unwrap().iter().map(|s| format!("{s}\n")).collect();
    fs::write(dir.path().join("t.jsonl"), steps).unwrap();
    let o = vminor(&["apply", "c5.g6", "t.jsonl", "--labels"], dir.path());
    assert!(o.status.success());
    let out = &json_lines(&o)[0];
    assert_eq!(out["labels"].as_array().unwrap().len(), 4);
    let o = with_stdin(&["chromatic", "-"], dir.path(), &format!("{}\n", out["graph6"].as_str().unwrap()));
    assert_eq!(json_lines(&o)[0]["chi"], 2);
}

#[test]
fn oracle_reports_absent_minors_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = stdout(&vminor(&["gen", "path", "3"], dir.path()));
    let o = with_stdin(&["oracle", "-", "--target", "Bw", "--pivot"], dir.path(), &p3);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json_lines(&o)[0]["contained"], false);
    let o = with_stdin(&["oracle", "-", "--target", "Bw"], dir.path(), &p3);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn chromatic_and_limit_exact() {
    let dir = tempfile::tempdir().unwrap();
    vminor(&["gen", "cycle", "5", "--out", "c5.g6"], dir.path());
    let o = vminor(&["chromatic", "c5.g6"], dir.path());
    let line = &json_lines(&o)[0];
    assert_eq!((line["chi"].as_u64(), line["omega"].as_u64()), (Some(3), Some(2)));
    assert!(dir.path().join("c5.chromatic.cert.jsonl").exists());
    let o = vminor(&["chromatic", "c5.g6", "--limit-exact", "4"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("limit"));
}

#[test]
fn check_runs_suites_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["check", "elminate-fanning", "--seed", "7", "--count", "20"];
    let a = vminor(&args, dir.path());
    assert_eq!(a.status.code(), Some(0));
    let mut a = json_lines(&a).remove(0);
    let mut b = json_lines(&vminor(&args, dir.path())).remove(0);
    assert_eq!(a["passed"], 20);
    a["wall_ms"] = Value::Null;
    b["wall_ms"] = Value::Null;
    assert_eq!(a, b);
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = vminor(&["check", "no-such-lemma"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    assert!(err.contains("pivot-identity") && err.contains("oracle-naive"), "{err}");
    assert_eq!(vminor(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(vminor(&["chromatic", "missing.g6"], dir.path()).status.code(), Some(2));
    let o = with_stdin(&["chromatic", "-"], dir.path(), "not graph6\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_lists_lemmas() {
    let dir = tempfile::tempdir().unwrap();
    let o = vminor(&["check", "--list"], dir.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 18);
}

#[test]
fn out_dir_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let certs = dir.path().join("certs");
    let o = Command::new(env!("CARGO_BIN_EXE_vminor"))
        .args(["chromatic", "-"])
        .current_dir(dir.path())
        .env("VMINOR_OUT_DIR", &certs)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .and_then(|mut c| {
            c.stdin.take().unwrap().write_all(b"Bw\n")?;
            c.wait_with_output()
        })
        .unwrap();
    assert!(o.status.success());
    assert!(certs.join("stdin.chromatic.cert.jsonl").exists());
}

#[test]
fn drivers_emit_certificates() {
    let dir = tempfile::tempdir().unwrap();
    vminor(&["gen", "cycle", "5", "--out", "c5.g6"], dir.path());
    let o = vminor(&["drive", "nine-control", "c5.g6", "--forbidden", "Bw", "--q", "1", "--h", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let line = &json_lines(&o)[0];
    assert_eq!(line["certificate"]["kind"], "chi-bound");
    assert_eq!(line["certificate"]["bound"], 6);

    vminor(
        &["gen", "multicover", "2", "5", "5", "--core-shape", "cycle", "--pattern", "impure", "--out", "mc.g6"],
        dir.path(),
    );
    let o = vminor(
        &["drive", "chi-bounded", "mc.g6", "--ell", "2", "--c", "1", "--tau", "5", "--omega", "3", "--m", "2"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let r = &json_lines(&o)[0]["result"];
    assert_eq!(r["stable"]["X"].as_array().unwrap().len(), 2);
    assert!(r["refined"]["pure"].as_bool().unwrap() || r["refined"]["impure"].as_bool().unwrap());
    assert!(dir.path().join("mc.chi-bounded.cert.jsonl").exists());
    assert!(dir.path().join("mc.cert.jsonl").exists());

    let o = vminor(
        &["drive", "chi-bounded", "mc.g6", "--ell", "2", "--c", "9", "--tau", "5", "--omega", "3", "--m", "2"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
}
