use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_constforge"))
        .args(args)
        .env_remove("CONSTFORGE_DIGITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).expect("one JSON object per line")).collect()
}

#[test]
fn verify_single_identity() {
    let o = run(&["verify", "--id", "S1.1", "--digits", "60", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    for key in ["id", "digits", "terms", "lhs", "rhs", "gap", "status", "ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["status"], "pass");
    assert!(v["lhs"].as_str().unwrap().starts_with("5.01075571162563977553705415065"));
}

#[test]
fn domain_errors_exit_two() {
    let o = run(&["gf", "--family", "GF1.10", "--x", "1/2", "--digits", "50"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("x ≥ 1 required"));

    let o = run(&["gf", "--family", "GF1.4", "--x", "4", "--digits", "50"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("refused"));

    for args in [
        &["verify", "--id", "S9.9"][..],
        &["gf", "--family", "GF9", "--x", "1"],
        &["gf", "--family", "GF1.4", "--x", "1/"],
        &["verify", "--id", "S1.1", "--digits", "9"],
        &["verify", "--id", "B-LEIBNIZ"],
        &["cong", "--id", "C2a", "--pmin", "50", "--pmax", "10"],
        &["cong", "--id", "C9", "--pmin", "5", "--pmax", "10"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn generating_function_point() {
    let o = run(&["gf", "--family", "GF1.17", "--x", "sqrt(2)", "--digits", "40", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json_lines(&o)[0]["status"], "pass");
}

#[test]
fn congruence_report_line() {
    let o = run(&["cong", "--id", "C2b", "--pmin", "7", "--pmax", "7", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0], serde_json::json!({"id": "C2b", "p": 7, "lhs": 2, "rhs": 2, "status": "pass"}));

    let o = run(&["cong", "--id", "C2b", "--pmin", "3", "--pmax", "5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
}

#[test]
fn output_is_independent_of_jobs() {
    let a = run(&["verify-all", "--digits", "30", "--json", "--jobs", "1"]);
    let b = run(&["verify-all", "--digits", "30", "--json", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let lines = json_lines(&a);
    assert_eq!(lines.len(), 23);
    assert!(lines.iter().all(|v| v["status"] == "pass" && v["ms"] == 0));

    let a = run(&["cong", "--id", "C2a", "--pmin", "5", "--pmax", "400", "--output", "json", "--jobs", "1"]);
    let b = run(&["cong", "--id", "C2a", "--pmin", "5", "--pmax", "400", "--output", "json", "--jobs", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let ps: Vec<u64> = json_lines(&a).iter().map(|v| v["p"].as_u64().unwrap()).collect();
    assert!(ps.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn digits_from_environment() {
    let o =
        Command::new(env!("CARGO_BIN_EXE_constforge")).args(["pi"]).env("CONSTFORGE_DIGITS", "20").output().unwrap();
    assert_eq!(stdout(&o).trim(), "3.14159265358979323846");
    let o = run(&["pi", "--digits", "10", "--json"]);
    assert_eq!(json_lines(&o)[0]["value"], "3.1415926535");
}

#[test]
fn exact_checks_and_profile() {
    let o = run(&["ps-verify", "--order", "21", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json_lines(&o).iter().all(|v| v["passed"] == true));

    let o = run(&["prod-coeff", "--kmax", "12", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o).len(), 24);

    let o = run(&["profile", "--id", "B-LEIBNIZ", "--terms", "1000", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let last = json_lines(&o).pop().unwrap();
    assert!(last["digits"].as_f64().unwrap() <= 4.0);

    let o = run(&["list", "--json"]);
    assert_eq!(json_lines(&o).len(), 27);
}
