//! End-to-end runs of the `singlab` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_singlab")).args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_singlab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is JSON"))
        .collect()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn invariants_of_a_semigroup() {
    let out = run(&["invariants", "[4,6,13]"]);
    assert_eq!(code(&out), 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["conductor"], json!(16));
    assert_eq!(v["milnor"], json!(16));
    assert_eq!(v["contact_exponent"], json!("3/2"));
    assert_eq!(v["higher_contact"], json!(["3/2", "13/8"]));
    assert_eq!(v["polar_invariants"], json!(["6", "13/2"]));
    assert_eq!(v["eggers"]["type"], json!("NotEggers"));
}

#[test]
fn invariants_from_stdin_and_polynomial() {
    let a = run_stdin(&["--input", "-", "invariants"], "[2,3]");
    let b = run(&["invariants", "y^2-x^3"]);
    assert_eq!(code(&a), 0);
    assert_eq!(code(&b), 0);
    assert_eq!(json_lines(&a)[0]["milnor"], json!(2));
    assert_eq!(json_lines(&b)[0]["milnor"], json!(2));
}

#[test]
fn two_cusps_attain_the_bound() {
    let out = run(&["invariants", "(y^2-x^3)*(y^2+x^3)"]);
    assert_eq!(code(&out), 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["milnor"], json!(15));
    assert_eq!(v["milnor_bound"]["attained"], json!(true));
}

#[test]
fn table_format() {
    let out = run(&["--format", "table", "invariants", "[2,3]"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let milnor = text.lines().find(|l| l.starts_with("milnor ")).unwrap();
    assert_eq!(milnor.split_whitespace().collect::<Vec<_>>(), ["milnor", "2"]);
}

#[test]
fn parse_errors_exit_two() {
    let out = run(&["invariants", "[4,6"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json_lines(&out)[0]["error"], json!("ParseError"));
    assert_eq!(code(&run(&["invariants", "[4,6,12]"])), 2);
    assert_eq!(code(&run(&["check", "no-such-suite"])), 2);
}

#[test]
fn precondition_errors_exit_three() {
    let transverse = r#"{"branches":[[2,3],[2,3]],"contact":[["inf",1],[1,"inf"]]}"#;
    let out = run(&["blowup", transverse]);
    assert_eq!(code(&out), 3);
    assert_eq!(json_lines(&out)[0]["error"], json!("NotUnitangent"));
    let param = r#"{"n":2,"y":{"3":1},"trunc":8}"#;
    let out = run(&["oracle", "intersection", param, "--with", "y^2-x^3"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json_lines(&out)[0]["error"], json!("TruncationExceeded"));
}

#[test]
fn equisingular_exit_codes() {
    assert_eq!(code(&run(&["equisingular", "[2,3]", "y^2-x^3"])), 0);
    let out = run(&["equisingular", "[2,3]", "[2,5]"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json_lines(&out)[0]["equisingular"], json!(false));
}

#[test]
fn resolve_track() {
    let out = run(&["blowup", "--steps", "resolve", "[4,9]"]);
    assert_eq!(code(&out), 0);
    let lines = json_lines(&out);
    let semigroups: Vec<&Value> = lines.iter().map(|l| &l["curve"]["branches"][0]).collect();
    assert_eq!(semigroups, [&json!([4, 9]), &json!([4, 5]), &json!([1])]);
    assert_eq!(lines[1]["hironaka"]["case"], json!("ii"));
    assert_eq!(lines[2]["hironaka"]["case"], json!("i"));
    assert_eq!(lines.iter().map(|l| &l["milnor"]).collect::<Vec<_>>(), lines.iter().map(|l| &l["pham_milnor"]).collect::<Vec<_>>());
}

#[test]
fn oracle_tasks() {
    let out = run(&["oracle", "milnor", "(y^2-x^3)*(y^2+x^3)"]);
    assert_eq!(json_lines(&out)[0]["milnor"], json!(15));
    assert_eq!(json_lines(&out)[0]["model"]["matches"], json!(true));
    let out = run(&["oracle", "intersection", "y^2-x^3", "--with", "y-x"]);
    assert_eq!(json_lines(&out)[0]["intersection"], json!(2));
    let out = run(&["oracle", "semigroup", r#"{"n":4,"y":{"6":1,"7":1},"trunc":16}"#]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_lines(&out)[0]["semigroup"], json!([4, 6, 13]));
    assert_eq!(code(&run(&["oracle", "semigroup", r#"{"n":4,"y":{"6":1},"trunc":16}"#])), 2);
}

#[test]
fn checks_pass_and_are_deterministic() {
    let a = run(&["--seed", "7", "--count", "40", "check", "all"]);
    let b = run(&["--seed", "7", "--count", "40", "check", "all"]);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    assert!(json_lines(&a).iter().all(|r| r["failed"] == json!(0)));
}

#[test]
fn fixtures_are_deterministic() {
    for kind in ["semigroups", "curves", "realizable", "unitangent", "scenarios", "params"] {
        let a = run(&["--seed", "11", "--count", "5", "fixtures", kind]);
        assert_eq!(code(&a), 0);
        assert_eq!(json_lines(&a).len(), 5);
        let b = Command::new(env!("CARGO_BIN_EXE_singlab"))
            .args(["--count", "5", "fixtures", kind])
            .env("SINGLAB_SEED", "11")
            .output()
            .unwrap();
        assert_eq!(a.stdout, b.stdout, "{kind}");
    }
}
