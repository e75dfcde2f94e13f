use std::process::{Command, Output};

fn theta5(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_theta5")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_e1_json() {
    let out = theta5(&["verify", "--id", "E1", "--order", "20", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let r = &doc.as_array().unwrap()[0];
    assert_eq!(r["id"], "E1");
    assert_eq!(r["passed"], true);
    assert_eq!(r["variant"], "as-stated");
    assert!(r["first_mismatch"].is_null());
}

#[test]
fn json_report_round_trips() {
    let out = theta5(&["verify", "--id", "W6", "--id", "N1a", "--variant", "all", "--format", "json"]);
    let text = stdout(&out);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&value).unwrap() + "\n";
    assert_eq!(again, text);
    let arr = value.as_array().unwrap();
    assert_eq!(arr.len(), 3);
    assert_eq!(arr[0]["passed"], false);
    assert_eq!(arr[0]["first_mismatch"]["exponent"], "5/2");
    assert_eq!(arr[1]["variant"], "corrected");
    assert_eq!(arr[1]["passed"], true);
    assert_eq!(arr[2]["id"], "N1a");
}

#[test]
fn failing_identity_exits_one() {
    let out = theta5(&["verify", "--id", "T1d", "--order", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("FAIL T1d"));
    let out = theta5(&["verify", "--id", "T1d", "--order", "10", "--variant", "corrected"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(theta5(&["verify", "--id", "NO_SUCH"]).status.code(), Some(2));
    assert_eq!(theta5(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(theta5(&["verify"]).status.code(), Some(2));
    assert_eq!(theta5(&["coeffs", "--kernel", "Q", "--upto", "3"]).status.code(), Some(2));
    assert_eq!(theta5(&["verify", "--id", "E1", "--order", "0"]).status.code(), Some(2));
    assert_eq!(theta5(&["expand", "--object", "theta"]).status.code(), Some(2));
}

#[test]
fn expand_eta_quotient() {
    let out = theta5(&["expand", "--object", "eta-quotient", "--spec", "5:5/1:-1", "--order", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.contains("q^(1) * [1 + q^(1) + 2*q^(2) + 3*q^(3) + 5*q^(4) + 2*q^(5)"), "{s}");
}

#[test]
fn expand_theta_json() {
    let out = theta5(&["expand", "--object", "theta", "--char", "1,1", "--deriv", "1", "--order", "3", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["cpow"], 1);
    assert_eq!(doc["qpow"], "1/8");
    assert_eq!(doc["phase"], "e(1/4)");
}

#[test]
fn tables() {
    let out = theta5(&["coeffs", "--kernel", "B", "--upto", "5"]);
    assert_eq!(stdout(&out), "1 1\n2 1\n3 2\n4 3\n5 5\n");
    let out = theta5(&["partitions", "--upto", "14"]);
    let s = stdout(&out);
    assert!(s.contains("\n4 5\n") && s.contains("\n9 30\n") && s.ends_with("\n14 135\n"));
}

#[test]
fn numeric_check_is_reproducible() {
    let args = ["numeric-check", "--id", "N2", "--id", "N4", "--seed", "11", "--format", "json"];
    let a = theta5(&args);
    let b = theta5(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc[0]["seed"], 11);
    let strict = theta5(&["numeric-check", "--id", "N6", "--tol", "1e-14"]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn list_mentions_every_kind() {
    let s = stdout(&theta5(&["list"]));
    assert!(s.lines().any(|l| l.starts_with("W6") && l.contains("as-stated,corrected")));
    assert!(s.lines().any(|l| l.starts_with("N3")));
}
