use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    p.to_str().unwrap().to_string()
}

fn hd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hd")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn documented_text_outputs() {
    let o = hd(&["validate", &fixture("l31.hd")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim_end(), "valid, genus 1, k=3");

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("wound.hd");
    let o = hd(&["wind", &fixture("s1s2.hd"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim_end(), "K=1, new intersections 4/4 budget, admissible");

    let o = hd(&["penner", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim_end(), "spectral radius (3+√5)/2 ≈ 2.618034, entropy floor 0.962424");
}

#[test]
fn wind_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("wound.hd");
    let p = out.to_str().unwrap();
    assert!(hd(&["wind", &fixture("s1s2.hd"), "--out", p]).status.success());
    let o = hd(&["--json", "validate", p]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["ok"], true);
    let o = hd(&["--json", "admissible", p]);
    assert_eq!(json(&o)["results"][0]["admissible"], true);
}

#[test]
fn exit_codes() {
    // a domain error: too few tube inputs
    assert_eq!(hd(&["tube", "--r", "1"]).status.code(), Some(1));
    // an invalid diagram
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.hd");
    let text = std::fs::read_to_string(fixture("s1s2.hd")).unwrap();
    std::fs::write(&bad, text.replace("( +e1 )", "( -e1 )")).unwrap();
    let o = hd(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("invalid"), "{}", stdout(&o));
    // a cover class that is not a cocycle
    assert_eq!(hd(&["cover", &fixture("l31.hd"), "--sheets", "3", "--class", "1"]).status.code(), Some(1));
    // usage errors
    assert_eq!(hd(&["bogus"]).status.code(), Some(2));
    assert_eq!(hd(&["penner"]).status.code(), Some(2));
    assert_eq!(hd(&["validate", "/nonexistent/x.hd"]).status.code(), Some(2));
    assert_eq!(hd(&["cover", &fixture("s1s2.hd"), "--sheets", "2", "--class", "x"]).status.code(), Some(2));
}

#[test]
fn json_records_carry_schema() {
    let cases: Vec<(&str, Vec<String>)> = vec![
        ("validate", vec![fixture("s3.hd")]),
        ("invariants", vec![fixture("l31.hd")]),
        ("present", vec![fixture("l31.hd")]),
        ("admissible", vec![fixture("s1s2.hd")]),
        ("wind", vec![fixture("s1s2.hd")]),
        ("generators", vec![fixture("l31-l31.hd")]),
        ("bounds", vec![fixture("l31-l31.hd")]),
        ("penner", vec!["--n".into(), "3".into()]),
        ("tube", vec!["--r".into(), "1".into(), "--l".into(), "2".into()]),
        ("random", vec!["--seed".into(), "5".into()]),
    ];
    for (cmd, rest) in cases {
        let mut args = vec!["--json", cmd];
        args.extend(rest.iter().map(|s| s.as_str()));
        let o = hd(&args);
        assert!(o.status.success(), "{}", cmd);
        assert_eq!(json(&o)["schema"], format!("hd.{}.v1", cmd));
    }
    let o = hd(&["--json", "invariants", &fixture("l31.hd")]);
    let v = json(&o);
    assert!(v.to_string().contains("\"invariant_factors\""), "{}", v);
}

#[test]
fn jobs_keep_input_order() {
    let names = ["s3.hd", "l31.hd", "p3.hd", "s1s2.hd", "l31-l31.hd", "l31.hd"];
    let files: Vec<String> = names.iter().map(|n| fixture(n)).collect();
    let mut one = vec!["--json", "generators", "--jobs", "1"];
    one.extend(files.iter().map(|s| s.as_str()));
    let mut four = one.clone();
    four[3] = "4";
    let a = hd(&one);
    let b = hd(&four);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let got: Vec<String> = v["results"].as_array().unwrap().iter().map(|r| r["file"].as_str().unwrap().to_string()).collect();
    assert_eq!(got, files);
}

#[test]
fn seeded_commands_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.hd");
    let p = out.to_str().unwrap();
    let run = || {
        let o = hd(&["--json", "random", "--seed", "17", "--handles", "s1s2,l3", "--points", "2", "--out", p]);
        assert!(o.status.success());
        (o.stdout, std::fs::read(&out).unwrap())
    };
    assert_eq!(run(), run());
    assert!(hd(&["random"]).status.code() == Some(2));
}

#[test]
fn cover_then_reduce() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.hd");
    let r = dir.path().join("r.hd");
    let o = hd(&["--json", "cover", &fixture("s1s2.hd"), "--sheets", "2", "--class", "1", "--out", c.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(json(&o)["report"]["cover_genus"], 1);
    assert!(hd(&["reduce", c.to_str().unwrap(), "--out", r.to_str().unwrap()]).status.success());
    let o = hd(&["--json", "validate", r.to_str().unwrap()]);
    assert_eq!(json(&o)["ok"], true);

    // the class defaults to the first cohomology basis vector
    let o = hd(&["--json", "cover", &fixture("s1s2.hd"), "--sheets", "3", "--reduce"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["reduced"]["genus"], 1);
    assert_eq!(hd(&["cover", &fixture("l31.hd"), "--sheets", "2"]).status.code(), Some(1));
}
