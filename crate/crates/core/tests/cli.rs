//! End-to-end checks of the command-line surface: exit codes, byte-level
//! determinism, certificate verification.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_toldom")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn tmpdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("toldom-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

const E1: &str = r#"{
  "kind": "tolerance",
  "vertices": [
    { "id": "u", "l": "0", "r": "4", "t": "1" },
    { "id": "v", "l": "2", "r": "8", "t": "5/2" },
    { "id": "w", "l": "29/10", "r": "59/10", "t": "10" }
  ]
}
"#;

#[test]
fn solve_ds_pipeline() {
    let dir = tmpdir("ds");
    let inst = dir.join("e1.json");
    write(&inst, E1);
    let shadow = dir.join("e1-shadow.json");
    let out = run(&["convert", inst.to_str().unwrap(), "-o", shadow.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let sol = dir.join("e1-sol.json");
    let out = run(&["solve-ds", shadow.to_str().unwrap(), "-o", sol.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&sol).unwrap();
    assert!(text.contains("\"size\": 1"));
    assert!(text.contains("\"u\""));
    // certificate re-checked without a solver
    let out = run(&[
        "verify",
        shadow.to_str().unwrap(),
        "--solution",
        sol.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    let dir = tmpdir("codes");
    // infeasible: a single unbounded vertex has no dominating segment
    let lone = dir.join("lone.json");
    write(
        &lone,
        r#"{"kind":"tolerance","vertices":[{"id":"p","l":"0","r":"1","t":"5"}]}"#,
    );
    let out = run(&["solve-bds", lone.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("L does not dominate (P,L)"));

    // invalid input: duplicated x-coordinates in a shadow document
    let bad = dir.join("bad.json");
    write(
        &bad,
        r#"{"kind":"shadow","horizontal":true,"delta":"1",
           "points":[{"id":"a","x":"0","y":"0"},{"id":"b","x":"0","y":"5"}],
           "segments":[]}"#,
    );
    let out = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // budget refusal
    let big = dir.join("big.json");
    let gen = run(&[
        "gen",
        "tolerance",
        "--seed",
        "3",
        "--n",
        "12",
        "-o",
        big.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    let out = Command::new(bin())
        .args(["oracle", big.to_str().unwrap()])
        .env("TOLDOM_ORACLE_MAX", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn deterministic_outputs() {
    let dir = tmpdir("det");
    let inst = dir.join("gen.json");
    for round in 0..2 {
        let out = run(&[
            "gen",
            "tolerance",
            "--seed",
            "11",
            "--n",
            "6",
            "--unbounded",
            "40",
            "-o",
            inst.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        let text = std::fs::read_to_string(&inst).unwrap();
        if round == 0 {
            write(&dir.join("gen-first.json"), &text);
        } else {
            assert_eq!(text, std::fs::read_to_string(dir.join("gen-first.json")).unwrap());
        }
    }
    let sol_a = dir.join("a.json");
    let sol_b = dir.join("b.json");
    for (target, _) in [(&sol_a, 0), (&sol_b, 1)] {
        let out = run(&["solve-ds", inst.to_str().unwrap(), "-o", target.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(
        std::fs::read(&sol_a).unwrap(),
        std::fs::read(&sol_b).unwrap(),
        "solution files must be byte-identical"
    );
}

#[test]
fn reduce_and_backmap() {
    let dir = tmpdir("reduce");
    let inst = dir.join("s3sc.json");
    let out = run(&["gen", "s3sc", "--seed", "1", "--n", "2", "-o", inst.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let shadow = dir.join("reduced.json");
    let out = run(&["reduce", inst.to_str().unwrap(), "-o", shadow.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    // a feasible dominating set: all set segments plus the hub (L11)
    let text = std::fs::read_to_string(&shadow).unwrap();
    assert!(text.contains("\"L11\""));
    let sol = dir.join("sol.json");
    let vertices: Vec<String> = (1..=11).map(|k| format!("L{k}")).collect();
    let doc = serde_json::json!({
        "kind": "solution",
        "problem": "ds",
        "status": "ok",
        "size": vertices.len(),
        "vertices": vertices,
        "witness": {},
    });
    write(&sol, &serde_json::to_string_pretty(&doc).unwrap());
    let out = run(&["backmap", inst.to_str().unwrap(), sol.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("\"size\": 10"));
}

#[test]
fn render_svg_output() {
    let dir = tmpdir("svg");
    let inst = dir.join("e1.json");
    write(&inst, E1);
    let svg = dir.join("e1.svg");
    let out = run(&["render", inst.to_str().unwrap(), "-o", svg.to_str().unwrap(), "--shadows"]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches("<line ").count(), 2);
    assert_eq!(text.matches("<circle ").count(), 1);
}

#[test]
fn solve_rbds_roundtrip() {
    let dir = tmpdir("rbds");
    let inst = dir.join("e1.json");
    write(&inst, E1);
    let out = run(&[
        "solve-rbds",
        inst.to_str().unwrap(),
        "--j", "u", "--j2", "u", "--i", "v", "--i2", "v",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("\"u\"") && stdout.contains("\"v\""));
    // an infeasible pair returns exit code 1 with its reason: the end
    // anchor u lies outside the start wedge of (v, v)
    let out = run(&[
        "solve-rbds",
        inst.to_str().unwrap(),
        "--j", "v", "--j2", "v", "--i", "u", "--i2", "u",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("pair-infeasible"));
}
