use std::process::{Command, Output};

use num_bigint::BigInt;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bethecount"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bethecount"))
        .args(args)
        .env("BETHECOUNT_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn single(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out).lines().last().unwrap().to_string()
}

fn big(s: &Value) -> BigInt {
    s.as_str().unwrap().parse().unwrap()
}

#[test]
fn count_examples() {
    assert_eq!(
        single(&["count", "--r", "1", "--twos", "1", "--L", "4", "--M", "2"]),
        "6"
    );
    assert_eq!(
        single(&["count", "--r", "2", "--twos", "2", "--L", "2", "--M", "2,1"]),
        "4"
    );
    assert_eq!(
        single(&["count", "--r", "1", "--twos", "1", "--L", "4", "--M", "-1"]),
        "0"
    );
}

#[test]
fn mu_examples() {
    assert_eq!(
        single(&["mu", "--r", "1", "--twos", "1", "--L", "4", "--M", "2"]),
        "2"
    );
    assert_eq!(
        single(&["mu", "--r", "2", "--twos", "2", "--L", "2", "--M", "2,1"]),
        "0"
    );
    // (L-2M1+M2+1)/(L-M1+M2+1) C(L,M1) C(M1-1,M2) = 2/4 * 6 * 1
    assert_eq!(
        single(&["mu", "--super", "1,2", "--twos", "1", "--L", "4", "--M", "2,1"]),
        "3"
    );
    assert_eq!(
        single(&["mu", "--super", "1,1", "--L", "5", "--M", "2"]),
        "6"
    );
}

#[test]
fn symmetry_examples() {
    let first = |args: &[&str]| stdout(&run(args)).lines().next().unwrap().to_string();
    assert_eq!(
        first(&["symmetry", "--r", "3", "--zeros", "t1,t3"]),
        "su(2)+su(2)+u(1)"
    );
    assert_eq!(first(&["symmetry", "--r", "3", "--zeros", ""]), "u(1)^3");
    assert_eq!(
        first(&["symmetry", "--r", "2", "--zeros", "t1,t2"]),
        "su(3)"
    );
    assert_eq!(
        first(&["symmetry", "--r", "3", "--twists", "t2+t3"]),
        "su(2)+u(1)^2"
    );
    assert_eq!(
        first(&["symmetry", "--r", "3", "--angles", "1/3,-1/3,1/5"]),
        "su(2)+u(1)^2"
    );
    assert_eq!(
        first(&["symmetry", "--r", "3", "--angles", "0,1,0"]),
        "su(4)"
    );
}

#[test]
fn check_examples() {
    for (args, total) in [
        (
            vec![
                "check", "--r", "2", "--twos", "1", "--L", "4", "--dplus", "a2",
            ],
            "81",
        ),
        (vec!["check", "--r", "2", "--twos", "2", "--L", "2"], "36"),
        (
            vec!["check", "--super", "1,1", "--twos", "1", "--L", "6"],
            "64",
        ),
        (
            vec![
                "check",
                "--r",
                "2",
                "--twos",
                "1",
                "--L",
                "2",
                "--impurity",
                "2",
            ],
            "54",
        ),
        (vec!["check", "--r", "1", "--sites", "2;1;1"], "12"),
    ] {
        let out = run(&[&args[..], &["--format", "json"]].concat());
        assert!(out.status.success(), "{args:?}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["sum"], total, "{args:?}");
        assert_eq!(v["target"], total);
        assert_eq!(v["pass"], true);
    }
}

#[test]
fn explain_prints_stencil() {
    let out = stdout(&run(&[
        "mu",
        "--r",
        "2",
        "--twos",
        "1",
        "--L",
        "3",
        "--M",
        "1,0",
        "--dplus",
        "a1+a2",
        "--explain",
    ]));
    assert_eq!(
        out.lines().next().unwrap(),
        "mu(M) = c(M1,M2) - c(M1-1,M2-1)"
    );
    let out = stdout(&run(&[
        "mu",
        "--r",
        "2",
        "--twos",
        "1",
        "--L",
        "3",
        "--explain",
        "--format",
        "json",
    ]));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v["formula"],
        "c(M1,M2) - c(M1-1,M2) - c(M1,M2-1) + c(M1-2,M2-1) + c(M1-1,M2-2) - c(M1-2,M2-2)"
    );
}

#[test]
fn json_tables_round_trip() {
    for args in [
        vec!["mu", "--r", "2", "--twos", "2", "--L", "3", "--dplus", "a2"],
        vec!["mu", "--r", "3", "--twos", "1", "--L", "4"],
        vec!["mu", "--super", "1,2", "--L", "6"],
        vec!["mu", "--r", "2", "--L", "3", "--impurity", "2"],
    ] {
        let out = run(&[&args[..], &["--format", "json"]].concat());
        assert!(out.status.success(), "{args:?}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        let sum: BigInt = v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| big(&r["mu"]) * big(&r["dim"]))
            .sum();
        assert_eq!(sum, big(&v["total"]), "{args:?}");
    }
    let out = run(&[
        "count", "--r", "2", "--twos", "3", "--L", "3", "--format", "json",
    ]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let sum: BigInt = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| big(&r["c"]))
        .sum();
    assert_eq!(sum, big(&v["total"]));
    assert_eq!(sum, BigInt::from(10).pow(3));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = [
        "mu", "--r", "3", "--twos", "2", "--L", "4", "--dplus", "a1,a3", "--format", "csv",
    ];
    let one = run_with_threads(&args, "1");
    let many = run_with_threads(&args, "4");
    assert!(one.status.success() && many.status.success());
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(run(&args).stdout, one.stdout);
}

#[test]
fn csv_layout() {
    let out = stdout(&run(&[
        "mu", "--r", "2", "--twos", "2", "--L", "2", "--format", "csv",
    ]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "M1,M2,lambda,mu,dim");
    assert_eq!(lines[1], "0,0,\"(4,0,0)\",1,15");
}

#[test]
fn charge_column() {
    let out = stdout(&run(&[
        "mu", "--r", "2", "--twos", "2", "--L", "2", "--dplus", "a2", "--M", "4,2", "--format",
        "json",
    ]));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"][0]["charge"], serde_json::json!([4]));
    let out = stdout(&run(&[
        "mu", "--r", "2", "--twos", "2", "--L", "2", "--dplus", "a2", "--M", "4,2", "--charge",
        "0,1", "--format", "json",
    ]));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"][0]["charge"], serde_json::json!([0]));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(
        code(&["count", "--r", "2", "--twos", "1", "--L", "3", "--M", "1"]),
        2
    );
    assert_eq!(code(&["count", "--r", "2", "--twos", "1"]), 2);
    assert_eq!(code(&["mu", "--r", "2", "--L", "3", "--dplus", "a7"]), 2);
    assert_eq!(
        code(&["mu", "--r", "2", "--L", "3", "--dplus", "a1", "--zeros", "t1"]),
        2
    );
    assert_eq!(code(&["symmetry", "--r", "3", "--angles", "1/2,1/2"]), 2);
    assert_eq!(code(&["count", "--r", "4", "--twos", "4", "--L", "40"]), 3);
    assert_eq!(
        code(&["check", "--super", "1,1", "--twos", "2", "--L", "3"]),
        1
    );
    assert_eq!(code(&["mu", "--r", "1", "--L", "2", "--M", "0"]), 0);
    assert_eq!(code(&["mu", "--r", "1", "--L", "2"]), 0);
    let bad_threads = run_with_threads(&["mu", "--r", "1", "--L", "2"], "zero");
    assert_eq!(bad_threads.status.code(), Some(2));
}

#[test]
fn verify_suite() {
    let out = run(&["verify", "--max-L", "3"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("summary: 7/7 families passed"));
    let out = run(&["verify", "--max-L", "2", "--perturb"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("FAIL"));
}
