use std::io::Write;
use std::process::{Command, Output, Stdio};

fn relcomm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relcomm")).args(args).output().expect("binary runs")
}

fn relcomm_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_relcomm"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const GENS: &str = "c2[1,3](a, b)\nconj(t[2,3](c), z1ab[2,1](a, b, c))\nc2[2,3](a, b)\n";

#[test]
fn verify_paper_passes_and_catches_mutation() {
    for n in ["3", "4"] {
        let o = relcomm(&["verify-paper", "--n", n]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).contains("15 of 15 identities hold"));
    }
    let o = relcomm(&["verify-paper", "--mutate", "bullet-1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL bullet-1"));
    let o = relcomm(&["verify-paper", "--mutate", "no-such-identity"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn eval_prints_the_commutator_block() {
    let o = relcomm(&["eval", "comm(t[1,2](a), t[2,1](b))"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("[1 + a*b + a*b*a*b, -a*b*a, 0]"), "{out}");
    assert!(out.contains("[b*a*b, 1 - b*a, 0]"), "{out}");
}

#[test]
fn parse_errors_are_usage_errors() {
    let o = relcomm(&["eval", "t[1,1](a)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1:3"), "{}", stderr(&o));
    assert_eq!(relcomm(&["eval", "t[1,4](a)"]).status.code(), Some(2));
    assert_eq!(relcomm(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn level_reports_smallest_pattern() {
    let o = relcomm(&["level", "z[1,2](a*b, c)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "level AB");
    assert_eq!(relcomm(&["level", "t[1,2](a)", "--ideal", "AB+BA"]).status.code(), Some(1));
    assert_eq!(relcomm(&["level", "t[1,2](a*b)", "--ideal", "AB+BA"]).status.code(), Some(0));
}

#[test]
fn decompose_writes_a_trace_that_rechecks() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("gens.txt");
    let trace = dir.path().join("trace.json");
    std::fs::write(&input, GENS).unwrap();
    let o = relcomm(&["decompose", input.to_str().unwrap(), "--out", trace.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(doc["pair"], serde_json::json!([1, 2]));
    assert_eq!(doc["verdict"]["pass"], true);
    assert!(doc["residual"].as_array().unwrap().iter().all(|r| r["member"] == true));
    assert!(!doc["steps"].as_array().unwrap().is_empty());

    let o = relcomm(&["decompose", "--check", trace.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    // A tampered residual must fail the recheck.
    let text = std::fs::read_to_string(&trace).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["residual"][0]["word"] = "z[1,3](a*b, 0)".into();
    std::fs::write(&trace, serde_json::to_string(&doc).unwrap()).unwrap();
    let o = relcomm(&["decompose", "--check", trace.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn decompose_reads_stdin_and_honours_pair() {
    let o = relcomm_stdin(&["decompose", "-", "--no-steps", "--fixed-pair", "2,3"], GENS);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["pair"], serde_json::json!([2, 3]));
    assert_eq!(doc["verdict"]["pass"], true);
}

#[test]
fn decompose_guards_reject_large_inputs() {
    let o = relcomm_stdin(&["decompose", "-", "--max-degree", "4"], "c2[1,3](a*a*a*a*a*a, b)\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--max-degree"), "{}", stderr(&o));
    let o = relcomm_stdin(&["decompose", "-", "--max-terms", "5"], GENS);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--max-terms"), "{}", stderr(&o));
    assert_eq!(relcomm(&["decompose"]).status.code(), Some(2));
    assert_eq!(relcomm_stdin(&["decompose", "-", "--n", "2"], GENS).status.code(), Some(2));
}

#[test]
fn oracle_cases_and_exit_codes() {
    let o = relcomm(&["oracle", "--ring", "zmod:6", "--A", "(2)", "--B", "(3)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert_eq!(out.matches("EQUAL").count(), 3, "{out}");
    assert!(out.contains("|[E(n,R,A),E(n,R,B)]| = 1"), "{out}");

    let o = relcomm(&["oracle", "--ring", "t2f2", "--A", "strict", "--B", "strict", "--check", "theorem1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = relcomm(&["oracle", "--ring", "zmod:3", "--A", "R", "--B", "R", "--cap", "100"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("cap"));

    assert_eq!(relcomm(&["oracle", "--ring", "zmod:4", "--A", "(5)"]).status.code(), Some(2));
    assert_eq!(relcomm(&["oracle", "--ring", "gf:9"]).status.code(), Some(2));
}

#[test]
fn oracle_reads_ring_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z2.json");
    let ring = serde_json::json!({
        "name": "z2",
        "elements": ["0", "1"],
        "add": [[0, 1], [1, 0]],
        "mul": [[0, 0], [0, 1]],
        "one": 1,
        "ideals": { "everything": [0, 1] },
    });
    std::fs::write(&path, ring.to_string()).unwrap();
    let o = relcomm(&["oracle", "--ring", path.to_str().unwrap(), "--A", "everything", "--B", "R", "--check", "theorem2"]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("EQUAL"));
}
