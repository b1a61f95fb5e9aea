use std::process::{Command, Output};

fn carlitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carlitz"))
        .args(args)
        .env_remove("CARLITZ_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap().trim().to_string()
}

#[test]
fn documented_examples() {
    let out = carlitz(&["binom", "7", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "35");
    let out = carlitz(&["lucas", "10", "4", "--p", "3"]);
    assert_eq!(stdout(&out), "0");
    assert_eq!(stdout(&carlitz(&["binom", "1/2", "2"])), "-1/8");
    assert_eq!(stdout(&carlitz(&["kummer", "10", "4", "--p", "2"])), "1");
    assert_eq!(stdout(&carlitz(&["carlitz", "G", "2", "t^2"])), "t^2+t");
    assert_eq!(stdout(&carlitz(&["group", "rho", r#"{"q":3,"pairs":[[0,1],[1,0]]}"#, "5"])), "7");
    assert_eq!(stdout(&carlitz(&["group", "rho", r#"{"q":2,"pairs":[[0,1],[1,0]]}"#, "-2"])), "-3");
    assert_eq!(stdout(&carlitz(&["newton", "0", "1", "4", "9", "--at", "1/2"])), "1/4");
    assert_eq!(stdout(&carlitz(&["mahler", "decay", "1", "4", "16", "64", "--p", "3"])), "0 1 2 3");
    assert_eq!(
        stdout(&carlitz(&["mahler", "one-unit", "-1", "--trunc", "6", "--precision", "3"])),
        "u^6+u^5+u^4+u^3+u^2+u+1 + O(u^7)"
    );
    assert_eq!(stdout(&carlitz(&["digit-factor", "6"])), "x^6+x^4*y^2+x^2*y^4+y^6");
}

#[test]
fn operator_json_pipeline() {
    let delta = |a: &str| stdout(&carlitz(&["ops", "delta", a, "--trunc", "7", "--format", "json"]));
    let (da, db, dab) = (delta("t^2+1"), delta("t"), delta("t^2+t+1"));
    let conv = carlitz(&["ops", "convolve", &da, &db, "--format", "json"]);
    assert!(conv.status.success());
    let got: serde_json::Value = serde_json::from_slice(&conv.stdout).unwrap();
    let want: serde_json::Value = serde_json::from_str(&dab).unwrap();
    assert_eq!(got, want);
    assert_eq!(got["ring"]["f"], "t");
    assert_eq!(got["moments"].as_array().unwrap().len(), 8);

    let op = r#"{"ring":{"p":2,"m0":1,"f":"t","level":2},"coeffs":["0","1","0","0"]}"#;
    let out = carlitz(&["ops", "sigma", r#"{"q":2,"pairs":[[0,1],[1,0]]}"#, op, "--format", "json"]);
    let moved: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(moved["coeffs"], serde_json::json!(["0", "0", "1", "0"]));
    let out = carlitz(&["ops", "mul", op, op]);
    assert_eq!(stdout(&out), "0");
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(carlitz(&["lucas", "x", "1"]).status.code(), Some(2));
    assert_eq!(carlitz(&["binom", "3", "1", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(carlitz(&["lucas", "3", "1", "--p", "4"]).status.code(), Some(2));
    assert_eq!(carlitz(&["kummer", "3", "5"]).status.code(), Some(2));
    assert_eq!(carlitz(&["ops", "delta", "t", "--modulus", "t^2+1"]).status.code(), Some(2));
    assert_eq!(carlitz(&["digits", "5", "--precision", "0"]).status.code(), Some(2));
}

#[test]
fn budget_flag_beats_environment() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_carlitz"));
        cmd.args(["carlitz", "basis", "--trunc", "3"]);
        cmd.env_remove("CARLITZ_BUDGET");
        if let Some(v) = env {
            cmd.env("CARLITZ_BUDGET", v);
        }
        if let Some(v) = flag {
            cmd.args(["--budget", v]);
        }
        cmd.output().unwrap().status.code()
    };
    assert_eq!(run(None, None), Some(0));
    assert_eq!(run(Some("4"), None), Some(2));
    assert_eq!(run(Some("4"), Some("1000")), Some(0));
}

#[test]
fn property_commands_pass_and_are_deterministic() {
    let args = ["group", "verify-symm", "--p", "3", "--digits", "3", "--count", "3", "--format", "json"];
    let a = carlitz(&args);
    let b = carlitz(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(carlitz(&["frobenius", "--p", "3", "--m0", "2", "--samples", "50"]).status.success());
    assert!(carlitz(&["carlitz", "binomial-identity", "7", "--p", "3"]).status.success());
    assert!(carlitz(&["group", "verify-basicS", "--p", "3", "--digits", "3", "--count", "2"]).status.success());
}
