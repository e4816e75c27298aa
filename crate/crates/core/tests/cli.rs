//! The `gtbv` binary: outputs, exit codes and reproducibility.

use std::path::PathBuf;
use std::process::{Command, Output};

fn gtbv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtbv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn bracket_of_torus_generators() {
    let o = gtbv(&["bracket", "--surface", "torus", "a", "b"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 · (a b)");
    assert_eq!(stdout(&gtbv(&["bracket", "a", "a"])).trim(), "0");
    assert_eq!(stdout(&gtbv(&["bracket", "--surface", "pants", "a", "b"])).trim(), "0");
}

#[test]
fn surface_files() {
    let path = tmp("torus_rot.json");
    let o = gtbv(&["surface", "new", "--surface", "torus", "--rot2", "2,-1", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = gtbv(&["bracket", "--surface", path.to_str().unwrap(), "a", "b"]);
    assert_eq!(stdout(&o).trim(), "1 · (a b)");
    let info = gtbv(&["surface", "info", "--surface", path.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&info.stdout).unwrap();
    assert_eq!(v["info"]["genus"], 1);
    assert_eq!(v["rot2"], serde_json::json!([2, -1]));
    let missing = gtbv(&["surface", "info", "--surface", "/nonexistent/skeleton.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_2() {
    for args in [
        vec!["bracket", "a c", "b"],
        vec!["cobracket", "a b'' "],
        vec!["eval", "tr(a) * chord(1@0 -> 2@0 via 1@v0)"],
        vec!["verify", "NOT_A_SUITE"],
        vec!["frobnicate"],
        vec!["verify", "GOLDMAN_EVEN", "--group", "q"],
    ] {
        let o = gtbv(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(gtbv(&["--help"]).status.code(), Some(0));
}

#[test]
fn cobracket_and_wedge_bv() {
    let o = gtbv(&["--surface", "genus2", "cobracket", "a b a' b' c"]);
    let text = stdout(&o);
    assert!(text.contains('∧'), "{text}");
    // Δ of a single generator is the (scaled) cobracket
    let d = gtbv(&["--surface", "genus2", "bvdelta", "wedge(a b a' b' c)", "--cobracket-scale", "1"]);
    assert_eq!(stdout(&d), text);
}

#[test]
fn evaluation_is_seeded() {
    let a = gtbv(&["eval", "otr(a b) * otr(b')", "--group", "q", "--n", "1", "--seed", "3"]);
    let b = gtbv(&["eval", "otr(a b) * otr(b')", "--group", "q", "--n", "1", "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&gtbv(&["eval", "tr(a b)", "--group", "gl", "--n", "3", "--seed", "1"])).trim().parse::<i64>().is_ok());
    let one = gtbv(&["bvdelta", "1", "--group", "q"]);
    assert_eq!(stdout(&one).trim(), "0");
    let j = gtbv(&["bvdelta", "ent[1,0](a) * ent[2,0](b a')", "--group", "aff", "--surface", "theta", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert!(v["value_text"].is_string() && v["point"]["edges"].is_array());
}

#[test]
fn verify_reports_are_byte_identical() {
    let args = ["verify", "GT_AXIOMS", "--trials", "2", "--seed", "77"];
    let (a, b) = (gtbv(&args), gtbv(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["suite"], "GT_AXIOMS");
    assert_eq!(v["elapsed_ms"], 0);
    assert!(v["trials"].as_array().unwrap().iter().all(|t| t["verdict"] == "PASS"));
}
