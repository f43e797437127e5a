use std::process::{Command, Output};

fn harmonica(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harmonica"))
        .args(args)
        .env_remove("HARMONICA_TRUNC")
        .env_remove("HARMONICA_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn eval_normalizes_and_guesses_the_algebra() {
    let out = harmonica(&["--json", "eval", "X0^2 (X1 - 1)"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["algebra"], "vb");
    assert_eq!(v["value"], "-X0^2 + X0^2 X1");
    let out = harmonica(&["--json", "eval", "--algebra", "p5", "x15 X0"]);
    assert_eq!(json(&out)["value"], "x15 X0");
}

#[test]
fn parse_errors_exit_with_two() {
    let out = harmonica(&["eval", "X0 +"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error"));
    assert_eq!(harmonica(&["eval", "--algebra", "vb", "e0"]).status.code(), Some(2));
    assert_eq!(harmonica(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn wb_membership_reports_through_the_exit_code() {
    let out = harmonica(&["--json", "wb-member", "X0 X1 - X0 + 2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["constant"], "2");
    assert_eq!(v["quotient"], "X0");
    assert_eq!(harmonica(&["wb-member", "X0"]).status.code(), Some(1));
}

#[test]
fn delta_commands_agree_with_the_closed_forms() {
    let v = json(&harmonica(&["--json", "delta-betti", "X0 (X1 - 1)"]));
    assert_eq!(v["delta_wb"], "-X0 - Y0 + X0 X1 + Y0 Y1");
    let v = json(&harmonica(&["--json", "delta-derham", "e1"]));
    assert_eq!(v["delta_wdr"], "e1 + f1");
}

#[test]
fn fox_rejects_elements_outside_the_kernel() {
    let out = harmonica(&["--json", "fox", "x15 X0 - X0"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["coordinates"][0], "X0");
    assert_eq!(harmonica(&["fox", "x15"]).status.code(), Some(2));
}

#[test]
fn lie_rvarpi_projects_to_rrho() {
    let v = json(&harmonica(&["--json", "lie-rvarpi", "e1"]));
    let rows = v["pr12"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][0], "e1");
}

#[test]
fn verify_report_is_deterministic() {
    let strip = |out: &Output| {
        let mut v = json(out);
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    let a = harmonica(&[
        "--json",
        "--samples",
        "10",
        "--seed",
        "7",
        "verify",
        "--suite",
        "braid",
        "--suite",
        "factorization",
    ]);
    let b = harmonica(&[
        "--json",
        "--samples",
        "10",
        "--seed",
        "7",
        "verify",
        "--suite",
        "braid",
        "--suite",
        "factorization",
    ]);
    assert!(a.status.success());
    assert_eq!(strip(&a), strip(&b));
    let v = json(&a);
    assert_eq!(v["seed"], 7);
    let checks = v["checks"].as_array().unwrap();
    let ids: Vec<&str> = checks.iter().map(|c| c["check_id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(checks.iter().all(|c| c["status"] == "pass" && c["truncation"] == 4));
}

#[test]
fn truncation_defaults_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_harmonica"))
        .args(["--json", "gr", "(X0 - 1)(X1 - 1)"])
        .env("HARMONICA_TRUNC", "3")
        .output()
        .unwrap();
    let v = json(&out);
    assert_eq!(v["truncation"], 3);
    assert_eq!(v["filtration_degree"], "2");
    assert_eq!(v["components"][2], "e0 e1");
}
