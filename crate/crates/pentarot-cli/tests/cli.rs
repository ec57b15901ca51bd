//! End-to-end runs of the `pentarot` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pentarot")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn decide_exit_codes() {
    let half = run(&["decide", "--point", "1/2"]);
    assert_eq!(half.status.code(), Some(0));
    let v = json(&half);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["kind"], "periodic");
    assert_eq!(v["period"], 10);

    let third = run(&["decide", "--point", "1/3"]);
    assert_eq!(third.status.code(), Some(10));
    let v = json(&third);
    assert_eq!(v["kind"], "aperiodic");
    assert_eq!((v["preperiod"].as_u64(), v["cycle"].as_u64()), (Some(2), Some(4)));

    assert_eq!(run(&["decide", "--point", "-2*zeta^-1/3"]).status.code(), Some(10));
    assert_eq!(run(&["decide", "--point", "7"]).status.code(), Some(2));
    assert_eq!(run(&["decide", "--point", "not-a-number"]).status.code(), Some(2));
    assert_eq!(run(&["decide"]).status.code(), Some(2));
    assert_eq!(run(&["decide", "--point", "1/3", "--format", "svg"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["code", "--point", "1/3", "--len", "26"]);
    let b = run(&["code", "--point", "1/3", "--len", "26"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["coding"], "10110101011010101101101101");
    assert_eq!(v["address"].as_str().unwrap().len(), 26);
}

#[test]
fn orbit_formats() {
    let v = json(&run(&["orbit", "--point", "1/3", "--map", "S", "--steps", "6"]));
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 7);
    assert_eq!(pts[2], pts[6]);
    let csv = run(&["orbit", "--point", "1/2", "--steps", "10", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "step,point,re,im");
    assert_eq!(lines.len(), 12);
    let point = |line: &str| line.split('"').nth(1).unwrap().to_string();
    assert_eq!(point(lines[1]), point(lines[11]));
    assert_eq!(run(&["orbit", "--point", "0", "--map", "Ttilde"]).status.code(), Some(2));
}

#[test]
fn verify_reports_pass() {
    let out = run(&["verify", "--suite", "automaton"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["passed"], true);
    assert_eq!(run(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
}

#[test]
fn scan_csv_and_json() {
    let j = json(&run(&["scan", "--n", "7", "--k", "2", "--resolution", "4", "--steps", "200"]));
    assert_eq!(j["schema"], 1);
    assert_eq!(j["total"], 16);
    let csv = run(&["scan", "--n", "5", "--resolution", "3", "--steps", "100", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap().lines().count(), 10);
    assert_eq!(run(&["scan", "--n", "6"]).status.code(), Some(2));
}

#[test]
fn render_writes_svg() {
    let dir = std::env::temp_dir().join(format!("pentarot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for set in ["Y", "Yprime", "dual", "D", "orbit"] {
        let path = dir.join(format!("{set}.svg"));
        let out = run(&["render", "--set", set, "--depth", "2", "--N", "200", "--out", path.to_str().unwrap()]);
        assert!(out.status.success(), "{set}: {}", String::from_utf8_lossy(&out.stderr));
        let svg = std::fs::read_to_string(&path).unwrap();
        assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"), "{set}");
        assert!(!out.stderr.is_empty());
    }
    let default = Command::new(env!("CARGO_BIN_EXE_pentarot"))
        .args(["render", "--set", "Yprime", "--depth", "1", "--N", "10"])
        .current_dir(&dir)
        .output()
        .unwrap();
    assert!(default.status.success());
    assert!(dir.join("Yprime_1.svg").exists());
    assert_eq!(run(&["render", "--set", "Y", "--depth", "11"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
