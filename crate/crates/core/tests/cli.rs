use std::path::Path;
use std::process::Command;

use lpimprove::cli::{main_from_args, EXIT_ERROR, EXIT_EXCLUDED, EXIT_OK};
use lpimprove::region::parse_region_json;
use serde_json::Value;

fn run(args: &[&str]) -> i32 {
    let mut v = vec!["lpimprove"];
    v.extend_from_slice(args);
    main_from_args(v)
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn analyze_writes_report_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let svg = dir.path().join("r.svg");
    let code = run(&[
        "analyze",
        "y2^4+y1^12",
        "--json",
        json.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let r = read_json(&json);
    for key in [
        "version",
        "input",
        "kappa",
        "d_h",
        "factorization",
        "N",
        "hessian",
        "case",
        "conditions",
        "vertices",
        "endpoints",
        "flags",
        "notes",
    ] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["input"], "y2^4+y1^12");
    assert_eq!(r["case"], "C");
    assert_eq!(r["d_h"], "3/1");
    assert_eq!(r["hessian"]["T"], 10);
    assert_eq!(r["kappa"]["m"], 12);
    assert_eq!(r["endpoints"]["summability"]["u"], "13/16");
    let plot = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(plot.matches("<polygon").count(), 1);
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let code = run(&[
            "analyze",
            "y1*(y2-y1^2)^2*(y2+3*y1^2)",
            "--json",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    for p in [&a, &b] {
        let code = run(&[
            "search-case-d",
            "--seed",
            "3",
            "--trials",
            "50",
            "--json",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "y1^2*y2^2"]), EXIT_EXCLUDED);
    assert_eq!(run(&["analyze", "y1^2+y2^2"]), EXIT_EXCLUDED);
    assert_eq!(run(&["analyze", "y2^4+"]), EXIT_ERROR);
    assert_eq!(run(&["region", "y1*y2"]), EXIT_EXCLUDED);
    assert_eq!(
        run(&[
            "verify-scaling",
            "(y2-y1^2)^2",
            "--family",
            "c2",
            "--pq",
            "4/3"
        ]),
        EXIT_ERROR
    );
    assert_eq!(
        run(&["verify-scaling", "(y2-y1^2)^2", "--family", "nu"]),
        EXIT_ERROR
    );
    assert_eq!(
        run(&["verify-decay", "(y2-y1^2)^3", "--j", "2", "--k", "6"]),
        EXIT_ERROR
    );
    assert_eq!(run(&["no-such-command"]), EXIT_ERROR);
}

#[test]
fn region_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("region.json");
    assert_eq!(
        run(&[
            "region",
            "y2^4+y2^2*y1^6-y2*y1^9+y1^12",
            "--json",
            json.to_str().unwrap()
        ]),
        EXIT_OK
    );
    let rp = parse_region_json(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(rp
        .vertices
        .iter()
        .any(|v| v.u.to_string() == "7/8" && v.v.to_string() == "5/8"));
}

#[test]
fn lemma_suites_report() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("lemmas.json");
    assert_eq!(
        run(&[
            "verify-lemmas",
            "--seed",
            "7",
            "--count",
            "10",
            "--json",
            json.to_str().unwrap()
        ]),
        EXIT_OK
    );
    let r = read_json(&json);
    assert_eq!(r["suites"].as_array().unwrap().len(), 6);
}

#[test]
fn numeric_analysis_is_advisory() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("n.json");
    let code = run(&[
        "analyze",
        "--numeric",
        "y1*(y2+y1^3)*(y2+4.7912878474779200*y1^3)",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let r = read_json(&json);
    assert_eq!(r["case"], "D");
    assert_eq!(r["flags"]["advisory"], true);
    assert!(r["factorization"].is_null());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_lpimprove");
    let st = Command::new(bin)
        .args(["analyze", "y1^2*y2^2"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(EXIT_EXCLUDED));
    assert!(String::from_utf8_lossy(&st.stdout).contains("monomial"));
    let st = Command::new(bin)
        .args(["analyze", "y1^5+y2*y1^3+9/40*y2^2*y1"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&st.stdout).contains("d_h = 5/3, N = 1, T = 2"));
    let st = Command::new(bin).arg("--version").output().unwrap();
    assert_eq!(st.status.code(), Some(EXIT_OK));
}
