use std::path::PathBuf;
use std::process::{Command, Output};

fn sighom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sighom")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

#[test]
fn build_sp5_dot() {
    let o = sighom(&["build", "sp-5", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let dashed = text.lines().filter(|l| l.contains("style=dashed")).count();
    let solid = text.lines().filter(|l| l.contains(" -- ") && !l.contains("style=dashed")).count();
    assert_eq!((solid, dashed), (5, 5));
}

#[test]
fn build_is_deterministic() {
    let a = stdout(&sighom(&["build", "tromp-9"]));
    let b = stdout(&sighom(&["build", "tromp-9"]));
    assert_eq!(a, b);
    let g = serde_json::from_str::<serde_json::Value>(&a).unwrap();
    assert_eq!(g["n"], 20);
}

#[test]
fn props_at_sp25() {
    let o = sighom(&["props", "--target", "at-sp-25", "--check", "P:3:4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["reports"][0]["holds"], true);
    let o = sighom(&["props", "--target", "at-sp-25", "--check", "P:3:5"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["reports"][0]["holds"], false);
}

#[test]
fn chi2_of_emitted_g3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g3.json");
    let o = sighom(&["witnesses", "--emit", "G3"]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&path, &o.stdout).unwrap();
    let o = sighom(&["chi2", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["value"], 9);
    assert_eq!(v["exhausted"], true);
}

#[test]
fn budget_exhaustion_exits_2() {
    let o = sighom(&["chi2", "G3", "--node-limit", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["indeterminate"], true);
}

#[test]
fn hom_absent_exits_1() {
    let o = sighom(&["check-hom", "sp-9", "sp-5"]);
    assert_eq!(o.status.code(), Some(1));
    let o = sighom(&["check-hom", "G1", "k4star", "--signed"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn table1_matches() {
    let o = sighom(&["table1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(sighom(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(sighom(&["build", "sp-7"]).status.code(), Some(3));
    assert_eq!(sighom(&["props", "--target", "sp-5", "--check", "Q:1"]).status.code(), Some(3));
    assert_eq!(sighom(&["--help"]).status.code(), Some(0));
}

#[test]
fn campaign_octahedron_with_resume() {
    let input = fixture("octahedron.pc");
    let input = input.to_str().unwrap();
    let full = sighom(&["campaign", "--input", input, "--jobs", "1"]);
    assert_eq!(full.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck");
    let ck = ck.to_str().unwrap();
    let part = sighom(&["campaign", "--input", input, "--checkpoint", ck, "--chunk", "8", "--max-classes", "40"]);
    assert_eq!(part.status.code(), Some(2));
    let rest = sighom(&["campaign", "--input", input, "--checkpoint", ck, "--chunk", "8"]);
    assert_eq!(rest.status.code(), Some(0));
    assert_eq!(stdout(&rest), stdout(&full));
}

#[test]
fn selftest_subset() {
    let o = sighom(&["selftest", "1", "5", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 3);
}
