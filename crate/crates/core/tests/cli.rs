use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powell-calc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("powell-calc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn eval_each_representation() {
    let o = run(&["eval", "--rep", "sp", "--genus", "2", "--word", "e"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "g=2\n0 0 1 0\n0 0 0 1\n1 0 0 0\n0 1 0 0\n");
    let o = run(&["eval", "--rep", "framed", "--genus", "4", "--word", "x1 x2 x3"]);
    assert_eq!(stdout(&o).trim(), "(1 2 3 4) [1/4, 1/4, 1/4, -3/4]");
    let o = run(&["eval", "--rep", "perm", "--genus", "4", "--word", "e"]);
    assert_eq!(stdout(&o).trim(), "(1 2 3 4)");
    let o = run(&["eval", "--rep", "dih", "--word", "re r0"]);
    assert_eq!(stdout(&o).trim(), "-(12)");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["eval", "--rep", "sp", "--genus", "2", "--word", "q"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--rep", "sp", "--genus", "2", "--word", "x5"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["order", "--genus", "2", "--p", "4"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "/nonexistent/file.yaml"]).status.code(), Some(2));
    let bad = temp_file("unknown-field.yaml", "version: 1\nscenarios:\n  - { id: a, kind: sl2, colour: red }\n");
    assert_eq!(run(&["verify", bad.to_str().unwrap()]).status.code(), Some(2));
    let not_sp = temp_file("not-sp.txt", "g=2\n2 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
    let o = run(&["membership", "--genus", "2", "--p", "3", "--target", not_sp.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_reports() {
    let empty = temp_file("empty.yaml", "version: 1\nscenarios: []\n");
    let o = run(&["verify", empty.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[]");

    let failing = temp_file(
        "failing.yaml",
        "version: 1\nscenarios:\n  - id: bad\n    kind: sp-identity\n    anchor: plumbing\n    params: { genera: [2], lhs: \"t\", rhs: \"e\" }\n    expect: { equal: true }\n",
    );
    let o = run(&["verify", failing.to_str().unwrap(), "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("fail"));
}

#[test]
fn check_json_shape() {
    let o = run(&["check", "--scenario", "newgen-g4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let prefix = r#"[{"id":"newgen-g4","status":"pass","witness":null,"ms":"#;
    assert!(out.starts_with(prefix), "{out}");
    assert!(out.trim_end().ends_with("}]"));
    assert_eq!(run(&["check", "--scenario", "no-such-scenario"]).status.code(), Some(2));
}

#[test]
fn jobs_do_not_change_the_report() {
    let strip = |s: String| -> Vec<serde_json::Value> {
        let mut v: Vec<serde_json::Value> = serde_json::from_str(&s).unwrap();
        for r in &mut v {
            r["ms"] = serde_json::Value::Null;
        }
        v
    };
    let one = run(&["verify", "paper-core", "--format", "json", "--jobs", "1"]);
    let four = run(&["verify", "paper-core", "--format", "json", "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(strip(stdout(&one)), strip(stdout(&four)));
}

#[test]
fn lint() {
    assert_eq!(run(&["lint", "paper-core"]).status.code(), Some(0));
    assert_eq!(run(&["lint", "theorem-shadow"]).status.code(), Some(0));
    let missing = temp_file("missing-anchor.yaml", "version: 1\nscenarios:\n  - { id: a, kind: sl2 }\n");
    let o = run(&["lint", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("a: missing anchor"));
}

#[test]
fn membership_and_order() {
    let o = run(&["order", "--genus", "2", "--p", "2", "--subgroup", "powell"]);
    assert_eq!(stdout(&o).trim(), "6");
    let o = run(&["order", "--genus", "2", "--p", "3", "--subgroup", "full"]);
    assert_eq!(stdout(&o).trim(), "51840");

    let o = run(&["membership", "--genus", "3", "--p", "2", "--subgroup", "powell", "--target", "t(a1+a2,b3)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("member: true"));

    // the transvection along a1 is not in the Powell image mod 3
    let t = temp_file("t-a1.txt", "g=2\n1 -1 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
    let o = run(&["membership", "--genus", "2", "--p", "3", "--subgroup", "powell", "--target", t.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("member: false"));
    let o = run(&["membership", "--genus", "2", "--p", "3", "--subgroup", "full", "--target", t.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    // eval output feeds straight back in
    let sp = stdout(&run(&["eval", "--rep", "sp", "--genus", "3", "--word", "w w x1 x2"]));
    let f = temp_file("eval.txt", &sp);
    let o = run(&["membership", "--genus", "3", "--p", "3", "--target", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}
