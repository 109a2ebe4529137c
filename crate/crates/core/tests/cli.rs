//! The `modulus-lab` binary: exit codes, file output and reproducible JSON.

use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modulus-lab")).args(args).env("MODULUS_LAB_THREADS", "2").output().expect("spawn")
}

fn code(args: &[&str]) -> i32 {
    bin(args).status.code().expect("exit code")
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["reproduce", "--example", "sharp3x3"]), 0);
    assert_eq!(code(&["reproduce", "--example", "expansive_counterexample"]), 0);
    assert_eq!(code(&["verify", "--suite", "nosuch"]), 2);
    assert_eq!(code(&["verify", "--suite", "schatten_qsym", "--p", "2.0", "--trials", "200"]), 0);
    assert_eq!(code(&["search", "--problem", "c_sym_op", "--restarts", "0"]), 2);
    assert_eq!(code(&["list", "suites"]), 0);
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn thread_variable_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_modulus-lab"))
        .args(["list"])
        .env("MODULUS_LAB_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_reports_are_byte_identical() {
    let args = ["verify", "--suite", "bourin_lee", "--trials", "60", "--seed", "11", "--format", "json"];
    let (a, b) = (bin(&args), bin(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let strip = |path: &std::path::Path| {
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("wall_time_s");
        v.to_string()
    };
    let mut runs = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("s{k}.json"));
        let out = bin(&[
            "search",
            "--problem",
            "c_p_qsym",
            "--m",
            "3",
            "--n",
            "2",
            "--p",
            "3",
            "--restarts",
            "4",
            "--iters",
            "100",
            "--seed",
            "5",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(String::from_utf8_lossy(&out.stderr).contains("proven bound"));
        runs.push(strip(&path));
    }
    assert_eq!(runs[0], runs[1]);
}
