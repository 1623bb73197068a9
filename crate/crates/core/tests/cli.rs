mod common;

use std::process::{Command, Output};

use common::*;
use tsa_core::cli::Document;

fn tsa(args: &[&str]) -> Output {
    tsa_env(args, None)
}

fn tsa_env(args: &[&str], cap: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tsa"));
    cmd.args(args).env_remove("TSA_CAP");
    if let Some(c) = cap {
        cmd.env("TSA_CAP", c);
    }
    cmd.output().unwrap()
}

fn fx(name: &str) -> String {
    fixture_path(name).to_str().unwrap().to_string()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn minimized(args: &[&str]) -> Document {
    let o = tsa(args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    Document::parse(&stdout(&o)).unwrap()
}

#[test]
fn minimize_paper_machines() {
    let doc = minimized(&["minimize", &fx("intro_dfa.json"), "--monad", "powerset"]);
    assert_eq!((doc.kind(), doc.state_count()), ("powerset", 4));
    let doc = minimized(&[
        "minimize",
        &fx("ca1.json"),
        "--monad",
        "caba",
        "--verify",
        "8",
    ]);
    assert_eq!(doc.state_count(), 2);
    let doc = minimized(&[
        "minimize",
        &fx("wa1.json"),
        "--monad",
        "vector",
        "--field",
        "rational",
    ]);
    assert_eq!((doc.kind(), doc.state_count()), ("weighted", 3));
    let doc = minimized(&[
        "minimize",
        &fx("ga1.json"),
        "--monad",
        "group",
        "--group-file",
        &fx("perm_ab.json"),
    ]);
    assert_eq!(doc.state_count(), 3);
}

#[test]
fn summary_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("min.json");
    let dot = dir.path().join("min.dot");
    let o = tsa(&[
        "minimize",
        &fx("aa1.json"),
        "--monad",
        "alternating",
        "--verify",
        "6",
        "-o",
        out.to_str().unwrap(),
        "--emit-dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "states_in=5 carrier=11 generators=3");
    assert!(stderr(&o).contains("exact: pass"));
    let doc = Document::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc.state_count(), 3);
    let dot = std::fs::read_to_string(&dot).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("shape=square"));
}

#[test]
fn run_prints_outputs() {
    assert_eq!(
        stdout(&tsa(&["run", &fx("ga2.json"), "--word", "bb"])).trim(),
        "b"
    );
    assert_eq!(
        stdout(&tsa(&["run", &fx("wa2.json"), "--word", "c"])).trim(),
        "3"
    );
    assert_eq!(
        stdout(&tsa(&["run", &fx("aa2.json"), "--word", ""])).trim(),
        "false"
    );
    assert_eq!(
        stdout(&tsa(&["run", &fx("intro_dfa.json"), "--word", "abb"])).trim(),
        "true"
    );
    assert_eq!(code(&tsa(&["run", &fx("aa2.json"), "--word", "c"])), 2);
}

#[test]
fn equiv_reports_and_exits() {
    let o = tsa(&[
        "equiv",
        &fx("intro_dfa.json"),
        &fx("intro_nfa.json"),
        "--exact",
    ]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "equal"));
    let o = tsa(&["equiv", &fx("aa1.json"), &fx("aa2.json"), "--max-len", "6"]);
    assert_eq!(code(&o), 0);

    let dir = tempfile::tempdir().unwrap();
    let flipped = dir.path().join("flipped.json");
    let text = fixture_text("intro_dfa.json");
    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let outputs = value["output"].as_array_mut().unwrap();
    for o in outputs.iter_mut() {
        *o = serde_json::Value::Bool(!o.as_bool().unwrap());
    }
    std::fs::write(&flipped, value.to_string()).unwrap();
    let o = tsa(&[
        "equiv",
        &fx("intro_dfa.json"),
        flipped.to_str().unwrap(),
        "--max-len",
        "1",
    ]);
    assert_eq!(code(&o), 1);
    assert!(
        stdout(&o).starts_with("counterexample: ε"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn determinize_round_trips() {
    let o = tsa(&["determinize", &fx("intro_nfa.json"), "--then-minimize"]);
    assert_eq!(code(&o), 0);
    let doc = Document::parse(&stdout(&o)).unwrap();
    assert_eq!((doc.kind(), doc.state_count()), ("moore", 8));

    let dir = tempfile::tempdir().unwrap();
    let det = dir.path().join("det.json");
    assert_eq!(
        code(&tsa(&[
            "determinize",
            &fx("aa2.json"),
            "-o",
            det.to_str().unwrap()
        ])),
        0
    );
    let o = tsa(&["equiv", det.to_str().unwrap(), &fx("aa1.json"), "--exact"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn check_laws_reports_sizes() {
    let o = tsa(&["check-laws", "--monad", "powerset", "--base-size", "3"]);
    assert_eq!(code(&o), 0);
    let o = tsa(&["check-laws", "--monad", "alternating", "--base-size", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("base 2: 6 elements"));
    let o = tsa(&[
        "check-laws",
        "--monad",
        "vector",
        "--field",
        "gf:2",
        "--base-size",
        "2",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("base 2: 4 elements"));
    let o = tsa(&[
        "check-laws",
        "--monad",
        "group",
        "--group-file",
        &fx("perm_ab.json"),
        "--base-size",
        "3",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(
        code(&tsa(&[
            "minimize",
            "/nonexistent.json",
            "--monad",
            "powerset"
        ])),
        2
    );
    assert_eq!(
        code(&tsa(&["minimize", &fx("jsl.json"), "--monad", "lattice"])),
        2
    );
    assert_eq!(
        code(&tsa(&[
            "minimize",
            &fx("jsl.json"),
            "--monad",
            "vector",
            "--strategy",
            "naive"
        ])),
        2
    );
    assert_eq!(
        code(&tsa(&[
            "minimize",
            &fx("perm_ab.json"),
            "--monad",
            "powerset"
        ])),
        2
    );
    assert_eq!(code(&tsa(&["frobnicate"])), 2);
    assert_eq!(
        code(&tsa(&[
            "equiv",
            &fx("jsl.json"),
            &fx("wa1.json"),
            "--exact"
        ])),
        2
    );
}

#[test]
fn caps_exit_3() {
    let o = tsa_env(
        &["minimize", &fx("aa1.json"), "--monad", "alternating"],
        Some("100"),
    );
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert!(stderr(&o).contains("cap"));
    let o = tsa(&[
        "minimize",
        &fx("aa1.json"),
        "--monad",
        "alternating",
        "--cap",
        "100",
    ]);
    assert_eq!(code(&o), 3);
    let o = tsa_env(
        &[
            "minimize",
            &fx("aa1.json"),
            "--monad",
            "alternating",
            "--cap",
            "100000",
        ],
        Some("100"),
    );
    assert_eq!(code(&o), 0);
    assert_eq!(
        code(&tsa_env(
            &["run", &fx("aa1.json"), "--word", "a"],
            Some("lots")
        )),
        0
    );
    assert_eq!(
        code(&tsa_env(
            &["minimize", &fx("aa1.json"), "--monad", "powerset"],
            Some("lots")
        )),
        2
    );
}

#[test]
fn output_is_deterministic() {
    for (input, monad) in [
        ("aa1.json", "alternating"),
        ("intro_dfa.json", "powerset"),
        ("ca1.json", "caba"),
    ] {
        let args = ["minimize", &fx(input) as &str, "--monad", monad];
        let first = tsa(&args);
        assert_eq!(code(&first), 0);
        assert_eq!(first.stdout, tsa(&args).stdout);
    }
}
