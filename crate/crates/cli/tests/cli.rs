use std::path::PathBuf;
use std::process::{Command, Output};

use erecheck::containment::replay;
use erecheck::Rule;
use serde_json::Value;

fn erecheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_erecheck")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("erecheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn check_reports_the_first_counterexample() {
    let o = erecheck(&["check", "--alphabet", "bitset:abc", "(a|b)|c", "a|b"]);
    assert_eq!(stdout(&o), "FAILS witness=c\n");
    assert_eq!(code(&o), 1);

    let o = erecheck(&["check", "--alphabet", "bitset:abc", "a|b", "(a|b)|c"]);
    assert_eq!(stdout(&o), "HOLDS\n");
    assert_eq!(code(&o), 0);
}

#[test]
fn match_uses_membership() {
    let o = erecheck(&["match", "--alphabet", "bitset:abc", "c", "(a|b)|c"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("MATCH\n", 0));
    let o = erecheck(&["match", "--alphabet", "bitset:abc", "cc", "(a|b)|c"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("NO MATCH\n", 1));
    let o = erecheck(&["match", "", "a*"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("MATCH\n", 0));
    let o = erecheck(&["match", "--alphabet", "bitset:ab", "abc", "a*"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn next_prints_one_literal_per_line() {
    let o = erecheck(&["next", "--alphabet", "bitset:abc", "!(a|b)"]);
    assert_eq!(stdout(&o), "[ab]\nc\n");
    let o = erecheck(&["next", "!(a|b)"]);
    assert_eq!(stdout(&o), "[^ab]\n[ab]\n");
    let o = erecheck(&["next", "--alphabet", "bitset:abc", "(a|b)|c"]);
    assert_eq!(stdout(&o), ".\n");
}

#[test]
fn derive_by_symbol_and_class() {
    let o = erecheck(&["derive", "--by", "a", "(ab|ac)*"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("[bc](ab|ac)*\n", 0));
    let o = erecheck(&["derive", "--by", "[b-z]", "(ab|ac)*"]);
    assert_eq!(stdout(&o), "[]\n");
    let o = erecheck(&["derive", "--by", "[a-c]", "(ab|ac)*"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("cuts across"));
    let o = erecheck(&["derive", "--by", "a*", "a"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn equivalence_names_the_side() {
    let o = erecheck(&["equiv", "(a|b)*", "(a*b*)*"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("EQUIVALENT\n", 0));
    let o = erecheck(&["equiv", "(aa)*", "a*"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("DIFFERENT witness=a only-in=rhs\n", 1));
}

#[test]
fn parse_errors_point_at_the_position() {
    let o = erecheck(&["check", "(a|b", "a"]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("position 4"), "{err}");
    assert!(err.contains("      ^"), "{err}");
    let o = erecheck(&["check", "a", "a+b"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("reserved"));
}

#[test]
fn bad_flags_are_errors() {
    assert_eq!(code(&erecheck(&["check", "--alphabet", "ascii", "a", "a"])), 2);
    assert_eq!(code(&erecheck(&["check", "--oracle-check", "a", "a"])), 2);
    assert_eq!(code(&erecheck(&["next", "--raw-metrics", "a"])), 2);
    assert_eq!(code(&erecheck(&["bogus"])), 2);
}

#[test]
fn fuel_exhaustion_is_an_error_with_statistics() {
    let o = erecheck(&["check", "--fuel", "3", "(a|b)*abb", "(a|b)*b"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("pairs visited"), "{}", stderr(&o));
}

#[test]
fn infinite_alphabets() {
    let o = erecheck(&["check", "--alphabet", "cofinite", "[^a]", "[]"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("FAILS witness=\\u{0}\n", 1));
    let o = erecheck(&["check", "--alphabet", "cofinite", ".*a.*", ".*"]);
    assert_eq!(code(&o), 0);
    let o = erecheck(&["check", ".*", ".*a.*"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("FAILS witness=ε\n", 1));
}

#[test]
fn modes_agree() {
    for extra in [&[][..], &["--no-axioms"], &["--global-memo=false"], &["--intersection-literals", "meet"]] {
        let mut args = vec!["check", "--alphabet", "bitset:ab", "!(a*b)&(a|b)*", "!(b*)|a*"];
        args.extend_from_slice(extra);
        let o = erecheck(&args);
        assert_eq!(code(&o), 1, "{extra:?}");
        args.push("--oracle-check");
        assert_eq!(code(&erecheck(&args)), 1, "{extra:?}");
    }
}

#[test]
fn oracle_check_agrees_on_simple_queries() {
    let o = erecheck(&["check", "--oracle-check", "--alphabet", "bitset:ab", "(a|b)*abb", "(a|b)*b"]);
    assert_eq!(code(&o), 0);
    let o = erecheck(&["equiv", "--oracle-check", "--alphabet", "bitset:ab", "!(!a&!b)", "a|b"]);
    assert_eq!(code(&o), 0);
    let o = erecheck(&["match", "--oracle-check", "--alphabet", "bitset:ab", "abb", "(a|b)*b"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn trace_prints_the_derivation() {
    let o = erecheck(&["trace", "--alphabet", "bitset:abc", "(a|b)|c", "a|b"]);
    assert_eq!(
        stdout(&o),
        ". ⊑ [ab]  (unfold)\n  [ab]: () ⊑ ()  (prove-identity)\n  c: () ⊑ []  (disprove)\nFAILS witness=c\n"
    );
}

fn replay_file(path: &PathBuf) -> bool {
    let text = std::fs::read_to_string(path).unwrap();
    let events = text.lines().map(|line| {
        let v: Value = serde_json::from_str(line).unwrap();
        for key in ["lhs", "rhs", "literal"] {
            assert!(v.get(key).is_some(), "missing {key} in {line}");
        }
        let rule = Rule::from_name(v["rule"].as_str().unwrap()).expect("known rule");
        (rule, v["depth"].as_u64().unwrap() as usize)
    });
    replay(events.collect::<Vec<_>>()).unwrap()
}

#[test]
fn json_traces_replay_to_the_verdict() {
    let path = temp_path("trace.jsonl");
    let p = path.to_str().unwrap();
    let cases = [
        ("check", "(a|b)|c", "a|b"),
        ("check", "a|b", "(a|b)|c"),
        ("check", "(a|b)*abb", "(a|b)*b"),
        ("check", "!(a*b)&(a|b)*", "!(b*)|a*"),
        ("equiv", "(a|b)*", "(a*b*)*"),
        ("equiv", "(aa)*", "a*"),
    ];
    for (cmd, lhs, rhs) in cases {
        for extra in [&[][..], &["--no-axioms", "--global-memo=false"]] {
            let mut args = vec![cmd, "--alphabet", "bitset:abc", "--trace-json", p, lhs, rhs];
            args.extend_from_slice(extra);
            let o = erecheck(&args);
            assert_eq!(replay_file(&path), code(&o) == 0, "{cmd} {lhs} {rhs} {extra:?}");
        }
    }
    let first = std::fs::read_to_string(&path).unwrap();
    assert!(first.lines().all(|l| l.starts_with("{\"rule\":")));
}

#[test]
fn metrics_report_sizes() {
    let o = erecheck(&["metrics", "--raw-metrics", "--alphabet", "bitset:ab", "(a|b)|(a|b)"]);
    let out = stdout(&o);
    assert!(
        out.contains("size 1\n") && out.contains("raw-size 7\n") && out.contains("raw-width 4\n"),
        "{out}"
    );
    let o = erecheck(&["metrics", "a*", "(a|b)*"]);
    assert!(stdout(&o).contains("holds true\n"));
    assert_eq!(code(&o), 0);
}
