//! The `hxlab` binary end to end: exit codes and report text.

use std::path::Path;
use std::process::Command;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn hxlab(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_hxlab"))
        .args(args)
        .env_remove("HX_BUDGET")
        .output()
        .expect("binary runs");
    Output {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn taut_exit_codes() {
    let ok = hxlab(&["taut", "((p->q)->p)->p", "--matrix", "T"]);
    assert_eq!((ok.code, ok.stdout.trim()), (0, "tautology"));
    let refuted = hxlab(&["taut", "((p->q)->p)->p", "--matrix", "Tprime"]);
    assert_eq!(refuted.code, 1);
    assert_eq!(refuted.stderr.trim(), "counterexample p=0 q=1 value 0");
    let bad = hxlab(&["taut", "(p->"]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("syntax error at offset 4"), "{}", bad.stderr);
}

#[test]
fn unknown_commands_and_help() {
    let unknown = hxlab(&["frobnicate"]);
    assert_eq!(unknown.code, 2);
    assert!(unknown.stderr.contains("Usage"), "{}", unknown.stderr);
    for args in [
        &["--help"][..],
        &["tm", "--help"],
        &["tm", "reduce", "halt-to-same", "--help"],
    ] {
        let help = hxlab(args);
        assert_eq!(help.code, 0, "{args:?}");
        assert!(help.stdout.contains("Usage"));
    }
}

#[test]
fn matrix_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let lukasiewicz = write(
        dir.path(),
        "l3.txt",
        "values 3\ndesignated 2\nneg 2 1 0\nimp 0: 2 2 2\nimp 1: 1 2 2\nimp 2: 0 1 2\n",
    );
    assert_eq!(hxlab(&["taut", "p->p", "--matrix", &lukasiewicz]).code, 0);
    let r = hxlab(&["taut", "((p->q)->p)->p", "--matrix", &lukasiewicz]);
    assert_eq!(r.code, 1);
    assert_eq!(hxlab(&["taut", "p", "--matrix", "nowhere.txt"]).code, 2);
}

#[test]
fn proofs_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(
        dir.path(),
        "good.txt",
        "1. p->q->p ; AX1\n2. p->p->p ; SUB 1 {q:=p}\n",
    );
    let r = hxlab(&["check-proof", &good]);
    assert_eq!((r.code, r.stdout.trim()), (0, "valid proof of p->p->p (2 steps)"));
    let bad = write(
        dir.path(),
        "bad.txt",
        "1. p->q->p ; AX1\n2. q->q->p ; SUB 1 {q:=p}\n",
    );
    assert_eq!(hxlab(&["check-proof", &bad]).code, 1);
    let garbled = write(dir.path(), "garbled.txt", "1 p->q->p AX1\n");
    assert_eq!(hxlab(&["check-proof", &garbled]).code, 2);
}

#[test]
fn prove_and_enumerate() {
    let r = hxlab(&["prove", "p->~~p", "--budget", "1000"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("proof of p->~~p"));
    let r = hxlab(&["prove", "((p->q)->p)->p", "--budget", "300"]);
    assert_eq!(r.code, 3);
    let r = hxlab(&["enumerate", "--budget", "4"]);
    assert_eq!(
        r.stdout,
        "1\tp->q->p\n2\t(p->q->r)->(p->q)->p->r\n3\t~p->p->q\n4\t(p->~p)->~p\n"
    );
    let r = Command::new(env!("CARGO_BIN_EXE_hxlab"))
        .args(["enumerate"])
        .env("HX_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(r.stdout).unwrap().lines().count(), 2);
}

#[test]
fn dataset_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.tsv");
    let out = out.to_str().unwrap();
    let r = hxlab(&["gen-dataset", "--per-class", "300", "--out", out, "--jobs", "1"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("count_T=300"));
    let r = hxlab(&["validate-dataset", out]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("policy Tprime: rows 600 (T 300, C 300)"));

    let tampered = write(dir.path(), "t.tsv", "T\tp->q->p\nT\t((p->q)->p)->p\n");
    let r = hxlab(&["validate-dataset", &tampered, "--matrix", "Tprime"]);
    assert_eq!(r.code, 1);
    assert!(r
        .stderr
        .contains("line 2: ((p->q)->p)->p labeled T classifies Neither"));

    let r = hxlab(&[
        "gen-dataset",
        "--per-class",
        "300",
        "--max-theorems",
        "10",
        "--out",
        out,
    ]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("complete=false"));
}

#[test]
fn iso_and_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let universe = write(d, "u.txt", "a\nb\nc\nd\n");
    let known = write(d, "x.txt", "a\nb\n");
    let e1 = write(d, "e1.tsv", "a\tT\nb\tC\nc\tT\nd\tT\n");
    let e2 = write(d, "e2.tsv", "a\t1\nb\t0\nc\t1\nd\t0\n");
    let r = hxlab(&["iso", "--known", &known, "--explain", &e1, "--explain", &e2]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("{C->0, T->1}"), "{}", r.stdout);
    let r = hxlab(&["iso", "--known", &universe, "--explain", &e1, "--explain", &e2]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("d is labeled T and 0"), "{}", r.stderr);

    let r = hxlab(&[
        "analyze",
        "--universe",
        &universe,
        "--known",
        &known,
        "--explain",
        &e1,
        "--explain",
        &e2,
    ]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("adversarial set (1):\n  d\n"), "{}", r.stdout);
}

const EVEN: &str = "states 3 start 0\n0 0 -> 1 0 R\n0 1 -> 1 1 R\n1 0 -> 0 0 R\n1 1 -> 0 1 R\n1 _ -> 2 _ R\n\
                    2 0 -> 2 0 R\n2 1 -> 2 1 R\n2 _ -> 2 _ R\n";

#[test]
fn machines() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let even = write(d, "even.tm", EVEN);
    let r = hxlab(&["tm", "sim", &even, "01"]);
    assert_eq!(
        (r.code, r.stdout.as_str()),
        (0, "halted after 2 steps\noutput: 01\n")
    );
    let r = hxlab(&["tm", "sim", &even, "011"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("diverges"));
    let spin = write(d, "spin.tm", "states 1 start 0\n0 _ -> 0 1 R\n0 1 -> 0 _ L\n");
    assert_eq!(hxlab(&["tm", "sim", &spin, "--budget", "50"]).code, 3);
    assert_eq!(hxlab(&["tm", "sim", &even, "012"]).code, 2);

    let r = hxlab(&["tm", "reduce", "halt-to-same", &even, "01"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("# M1\nstates 1 start 0\n"));
    let halves: Vec<&str> = r.stdout.split("# M2\n").collect();
    let m1 = write(d, "m1.tm", &halves[0].replace("# M1\n", ""));
    let m2 = write(d, "m2.tm", halves[1]);
    let r = hxlab(&["tm", "equiv", &m1, &m2, "--probe-len", "2"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("proven different on \"\""), "{}", r.stderr);

    let r = hxlab(&["tm", "reduce", "halt-to-same", &even, "011", "--encoded"]);
    assert!(
        r.stdout.starts_with("56:states 1 start 0;0 0 -> 0 0 R;"),
        "{}",
        r.stdout
    );

    let identity = write(d, "id.tm", "states 1 start 0\n");
    let r = hxlab(&["tm", "reduce", "same-to-desiredone", &even, &identity]);
    assert!(r.stdout.contains("# known inputs: none"));
    let r = hxlab(&["tm", "probe", &identity, &even, "--inputs", "00,0110"]);
    assert_eq!(r.code, 1, "{}", r.stderr);
    assert!(r.stderr.contains("not a machine"));
    let r = hxlab(&["tm", "probe", &identity, &even, "--inputs", "0"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("not in the target's halting set"));
}
