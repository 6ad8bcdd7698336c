use std::process::{Command, Output};

fn qtrace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtrace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn expand_eta_text_and_json() {
    let o = qtrace(&["expand", "--series", "eta", "--order", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        "1*q^(1/24) + -1*q^(25/24) + -1*q^(49/24) + O(q^3)"
    );

    let o = qtrace(&[
        "expand", "--series", "theta3", "--order", "2", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["domain"], "exact");
    assert_eq!(v["ramification"], 2);
    assert_eq!(v["terms"][1]["coeff"]["num"], 2);
}

#[test]
fn expand_twisted_q() {
    let o = qtrace(&[
        "expand", "--series", "Q2", "--twist", "1,2,0,1", "--order", "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("(1/24) + 1*q^(1/2)"),
        "{}",
        stdout(&o)
    );
    // a complex twist switches the domain
    let o = qtrace(&[
        "expand", "--series", "Q1", "--twist", "0,1,1,3", "--order", "2", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"complex\""));
}

#[test]
fn char_json_fields() {
    let o = qtrace(&["char", "--pair", "1,0", "--order", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["sector"], serde_json::json!([1, 0]));
    assert_eq!(v["central_charge"], "-2");
    assert_eq!(
        qtrace(&[
            "char",
            "--pair",
            "1,1",
            "--group-order",
            "3",
            "--order",
            "3"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn check_suites_exit_codes() {
    let o = qtrace(&["check", "--suite", "identities"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("XFAIL"));

    assert_eq!(
        qtrace(&["check", "--suite", "unknown"]).status.code(),
        Some(2)
    );

    // too low an order is a failure, never a pass
    let o = qtrace(&["check", "--suite", "identities", "--order", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("insufficient_order"));
}

#[test]
fn check_json_is_newline_delimited() {
    let o = qtrace(&["check", "--suite", "eisenstein", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines.len() >= 6);
    for l in lines {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        for key in ["name", "kind", "passed", "order_used", "details"] {
            assert!(v.get(key).is_some(), "{key} missing in {l}");
        }
    }
}

#[test]
fn transform_subcommand() {
    let ok = qtrace(&[
        "transform",
        "--gamma",
        "1,1,0,1",
        "--weight",
        "0",
        "--multiplier",
        "0.9659258262890683,0.25881904510252074",
        "--lhs",
        "eta",
        "--rhs",
        "eta",
        "--tau",
        "0,2",
        "--tau",
        "-1,2",
    ]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));

    let s = qtrace(&[
        "transform",
        "--gamma",
        "0,-1,1,0",
        "--weight",
        "1/2",
        "--factor",
        "minus-i-tau",
        "--lhs",
        "eta",
        "--rhs",
        "eta",
        "--tau",
        "0,2",
    ]);
    assert_eq!(s.status.code(), Some(0));

    let wrong = qtrace(&[
        "transform",
        "--gamma",
        "1,1,0,1",
        "--weight",
        "0",
        "--lhs",
        "eta",
        "--rhs",
        "eta",
        "--tau",
        "0,2",
    ]);
    assert_eq!(wrong.status.code(), Some(1));

    let far = qtrace(&[
        "transform",
        "--gamma",
        "0,-1,1,0",
        "--weight",
        "0",
        "--lhs",
        "eta",
        "--rhs",
        "eta",
        "--tau",
        "0,0.01",
    ]);
    assert_eq!(far.status.code(), Some(3));

    let det = qtrace(&[
        "transform",
        "--gamma",
        "2,0,0,1",
        "--weight",
        "0",
        "--lhs",
        "eta",
        "--rhs",
        "eta",
        "--tau",
        "0,2",
    ]);
    assert_eq!(det.status.code(), Some(2));
}
