use std::process::{Command, Output};

use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramsey-words"))
        .args(args)
        .env_remove("RAMSEY_WORDS_OUT")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn inspect_table_number() {
    let o = cli(&["inspect", "200"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("{3, 6, 7}"), "{out}");
    assert!(out.contains("(3, 7)"), "{out}");

    let v = json(&cli(&["inspect", "0b11001000", "--format", "json"]));
    assert_eq!(v["support"], serde_json::json!([3, 6, 7]));
    assert_eq!(v["first_digit"], 3);
    assert_eq!(v["last_digit"], 7);
}

#[test]
fn inspect_rejects_zero_and_garbage() {
    let o = cli(&["inspect", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("positive"));
    let o = cli(&["inspect", "12x4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("position 2"), "{}", stderr(&o));
}

#[test]
fn inspect_pair_reports_jumps() {
    let v = json(&cli(&["inspect-pair", "0b10000100", "0b110101111", "--format", "json"]));
    assert_eq!(v["jumps"], 2);
    assert_eq!(v["labels"], "1211211");
    let o = cli(&["inspect-pair", "5", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn inspect_pair_lists_fragments_of_interleaved_pairs() {
    // 0b100101 and 0b1011000 interleave without sharing a digit
    let v = json(&cli(&["inspect-pair", "0b100101", "0b1011000", "--format", "json"]));
    assert!(v["fragments"]["right"].is_array());
    assert_eq!(v["carry_region"], Value::Null);
}

#[test]
fn verify_suites() {
    let o = cli(&["verify", "oracles", "--bound", "1024"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("pass"));
    let o = cli(&["verify", "firstdigit", "--bound", "16384"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&cli(&["verify", "jumpdelta", "--bound", "10", "--format", "json"]));
    assert_eq!(v["suite"], "jumpdelta");
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_failures_and_errors() {
    let o = cli(&["verify", "bogus"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unknown suite"));
    let o = cli(&["verify", "stage3", "--bound", "14"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("counterexample"));
}

#[test]
fn search_altsum_const() {
    let o = cli(&["search", "altsum", "--colouring", "const", "--B", "10", "--L", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["witnesses"][0]["terms"], serde_json::json!([1, 2, 3, 4, 5, 6]));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["params"]["bound"], "10");
    // witnesses where none were expected
    let o = cli(&["search", "altsum", "--colouring", "const", "--B", "10", "--L", "6", "--expect-none"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn search_q5_exhausts() {
    let o = cli(&[
        "search", "q5", "--colouring", "base-lsnz:3", "--variant", "a1free", "--L", "3", "--expect-none",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["exhausted"], true);
    assert_eq!(v["witnesses"], serde_json::json!([]));
}

#[test]
fn search_supermono_on_fibonacci() {
    let o = cli(&[
        "search", "supermono", "--word", "morphic:a->ab,b->a|a", "--colouring", "theta:full", "--n", "3",
        "--expect-none",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["exhausted"], true);
    assert_eq!(v["colouring"], "phi:full");
}

#[test]
fn reports_are_identical_across_thread_counts() {
    let run = |threads: &str| {
        stdout(&cli(&[
            "search", "altsum", "--colouring", "theta:stage2", "--B", "40", "--L", "8", "--witness-limit", "0",
            "--threads", threads,
        ]))
    };
    let one = run("1");
    assert!(!one.is_empty());
    assert_eq!(one, run("4"));
}

#[test]
fn reports_go_to_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested").join("report.csv");
    let o = cli(&[
        "search", "plus", "--colouring", "both:mod:2", "--n", "3", "--B", "20", "--format", "csv", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(std::fs::read_to_string(&path).unwrap().contains("2,4,8"));

    let o = Command::new(env!("CARGO_BIN_EXE_ramsey-words"))
        .args(["search", "hindman", "--word", "a", "--colouring", "lenmod:2", "--format", "text"])
        .env("RAMSEY_WORDS_OUT", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("hindman.txt")).unwrap();
    assert!(text.contains("2 4 6"), "{text}");
}

#[test]
fn search_errors() {
    let o = cli(&["search", "altsum", "--colouring", "mod:x"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("position 4"), "{}", stderr(&o));
    let o = cli(&["search", "q5", "--colouring", "theta:full"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not defined on numbers"));
    let o = cli(&["search", "supermono", "--colouring", "phi:full"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--word"));
    let o = cli(&["search", "altsum", "--B", "4611686018427387904", "--L", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("warning"), "{}", stderr(&o));
    let o = cli(&["search", "nope"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn phi_of_a_factor() {
    let o = cli(&["phi", "--word", "periodic:ab", "bb"]);
    assert_eq!(stdout(&o).trim(), "2");
    let o = cli(&["phi", "--word", "periodic:ab", "ab"]);
    assert!(stdout(&o).trim().ends_with(",0)"));
}
