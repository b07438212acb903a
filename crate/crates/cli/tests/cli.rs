use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn eucseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eucseq")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn rotations(s: &str) -> Vec<String> {
    (0..s.len()).map(|r| format!("{}{}", &s[r..], &s[..r])).collect()
}

#[test]
fn esa_plain_and_labelled() {
    let out = eucseq(&["esa", "--m1", "3", "--m2", "5", "--labels", "0,1"]);
    assert_eq!(stdout(&out).trim(), "10110110");
    let out = eucseq(&["esa", "--m1", "3", "--m2", "5", "--labels", "0,1", "--canonical"]);
    assert_eq!(stdout(&out).trim(), "01011011");
}

#[test]
fn esa_rhythm() {
    let out = eucseq(&["esa", "--m1", "5", "--m2", "3", "--rhythm"]);
    let line = stdout(&out).trim().to_owned();
    assert!(rotations("x.xx.xx.").contains(&line), "{line}");
    let out = eucseq(&["esa", "--m1", "5", "--m2", "3", "--rhythm", "--pulse", "b"]);
    let line = stdout(&out).trim().to_owned();
    assert!(rotations(".x..x..x").contains(&line) || rotations("x..x..x.").contains(&line), "{line}");
    let out = eucseq(&["esa", "--m1", "5", "--m2", "3", "--rhythm", "--pulse", "z"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn esa_json_trace() {
    let v = json(&eucseq(&["esa", "--m1", "18", "--m2", "14", "--json"]));
    assert_eq!(v["final_power"], 2);
    assert_eq!(v["closing"], "C = A3^2");
    assert_eq!(v["steps"].as_array().unwrap().len(), 3);
    assert_eq!(v["sequence"].as_array().unwrap().len(), 32);
}

#[test]
fn moments_of_compact_and_file_cycles() {
    let v = json(&eucseq(&["moments", "--cycle", "01101101"]));
    assert_eq!(v["mean"]["exact"], "2");
    assert_eq!(v["variance"]["exact"], "1/2");
    assert_eq!(v["variance"]["decimal"], 0.5);
    let v = json(&eucseq(&["moments", "--cycle", "01110101", "-p", "3"]));
    assert_eq!(v["variance"]["exact"], "3/4");
    assert!(v["raw_moment"]["exact"].is_string());
    assert!(v["central_moment"]["exact"].is_string());

    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "c.json",
        r#"{"problem":{"symbols":["a1","a2"],"multiplicities":[2,2]},"sequence":["a1","a2","a1","a2"]}"#,
    );
    let v = json(&eucseq(&["moments", "--cycle", &file]));
    assert_eq!(v["variance"]["exact"], "0");
}

#[test]
fn verify_verdicts() {
    let v = json(&eucseq(&["verify", "--cycle", "01101101"]));
    assert_eq!(v["optimal"], true);
    let v = json(&eucseq(&["verify", "--cycle", "01110101"]));
    assert_eq!(v["optimal"], false);
    let out = eucseq(&["verify", "--cycle", "abc"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
}

#[test]
fn esa_output_round_trips_through_verify() {
    for (m1, m2) in [(7, 3), (4, 9), (6, 6), (1, 5)] {
        let cycle = stdout(&eucseq(&["esa", "--m1", &m1.to_string(), "--m2", &m2.to_string()]));
        let v = json(&eucseq(&["verify", "--cycle", cycle.trim(), "--labels", "a,b"]));
        assert_eq!(v["optimal"], true, "({m1},{m2})");
    }
}

#[test]
fn exact_and_cap() {
    let v = json(&eucseq(&["exact", "--m1", "3", "--m2", "5", "--labels", "0,1", "--workers", "3"]));
    assert_eq!(v["min_objective"], 36);
    assert_eq!(v["min_variance"], "1/2");
    let out = eucseq(&["exact", "--m1", "3", "--m2", "5", "--table"]);
    assert!(stdout(&out).contains("yes"));
    let out = eucseq(&["exact", "--m1", "10", "--m2", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bound_compare_export() {
    let dir = tempfile::tempdir().unwrap();
    let problem = write(dir.path(), "p.json", r#"{"symbols":["0","1"],"multiplicities":[3,5]}"#);
    let v = json(&eucseq(&["bound", "--problem", &problem]));
    assert_eq!(v["lower_bound"], "512/15");
    assert_eq!(v["variance_lower_bound"], "4/15");

    let cycles = write(dir.path(), "c.json", r#"["01101101", "01110101"]"#);
    let csv = stdout(&eucseq(&["compare", "--problem", &problem, "--cycles", &cycles]));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "cycle_string,variance,pulse_variance_sym0,pulse_variance_sym1,optimal");
    assert_eq!(lines[1], "01101101,0.5,0.222222,0.24,true");
    assert_eq!(lines[2], "01110101,0.75,0.888889,0.24,false");
    let table = stdout(&eucseq(&["compare", "--problem", &problem, "--cycles", &cycles, "--format", "table"]));
    assert!(table.contains("3/4 (0.75)"));
    let v = json(&eucseq(&["compare", "--problem", &problem, "--sweep", "--format", "json"]));
    assert_eq!(v["rows"].as_array().unwrap().last().unwrap()["optimal"], true);

    let lp = stdout(&eucseq(&["export-miqp", "--problem", &problem]));
    assert!(lp.starts_with("\\ "));
    assert!(lp.trim_end().ends_with("End"));
    let target = dir.path().join("m.lp");
    let out = eucseq(&["export-miqp", "--problem", &problem, "-o", target.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&target).unwrap(), lp);
}

#[test]
fn usage_errors() {
    assert_eq!(eucseq(&["--help"]).status.code(), Some(0));
    assert_eq!(eucseq(&["--version"]).status.code(), Some(0));
    let out = eucseq(&["esa", "--m1", "x", "--m2", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
    assert_eq!(eucseq(&["bound", "--problem", "/nonexistent/p.json"]).status.code(), Some(1));
    assert_eq!(eucseq(&["compare", "--problem", "/nonexistent"]).status.code(), Some(1));
}
