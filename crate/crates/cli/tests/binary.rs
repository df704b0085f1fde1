use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ncdeform"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

const SEMI: &str = r#"{"a": {"context": {"rank": 2, "mode": "lattice"}, "coefficients": [{"point": [1, 0], "re": "1", "im": "0"}, {"point": [-1, 1], "re": "0.5", "im": "0.25"}]},
    "b": {"context": {"rank": 2, "mode": "lattice"}, "coefficients": [{"point": [0, 1], "re": "1", "im": "0"}]},
    "gamma": [[0, 1], [-1, 0]], "hbars": [0.1, 0.01], "window": 4}"#;

#[test]
fn success_writes_to_stdout_or_output_file() {
    let out = run(&["heisenberg"], r#"{"samples": 2, "hbar": 1}"#);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("y,phase_re,phase_im\n0,1,0\n"));

    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.json");
    let output = dir.path().join("out.csv");
    std::fs::write(&input, SEMI).unwrap();
    let out = run(&["semiclassical", "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&output).unwrap().starts_with("hbar,defect\n0.1,"));
}

#[test]
fn validation_errors_exit_1_with_a_diagnostic() {
    let bad = r#"{"a": {"context": {"rank": 2, "mode": "lattice"}, "coefficients": [{"point": [1], "re": "1", "im": "0"}]},
        "b": {"context": {"rank": 2, "mode": "lattice"}, "coefficients": []}, "sigma": {"kind": "lattice", "matrix": [[0, 1], [-1, 0]], "hbar": 1}}"#;
    let out = run(&["star"], bad);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("a: coefficients[0].point"), "{err}");

    assert_eq!(run(&["heisenberg"], r#"{"samples": 0, "hbar": 1}"#).status.code(), Some(1));
    assert_eq!(run(&["heisenberg"], "not json").status.code(), Some(1));
    assert_eq!(run(&["kasprzak-verify"], r#"{"moduli": [5], "matrix": [[0]]}"#).status.code(), Some(1));
}

#[test]
fn tolerance_failures_exit_2_and_still_report() {
    let out = run(&["kasprzak-verify", "--tolerance", "0"], r#"{"moduli": [7], "matrix": [[3]], "trials": 5}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"passed\": false"));

    let out = run(&["suite", "--only", "4", "--bracket-scale", "0.15915494309189535"], "");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stdout).unwrap().contains("4,semiclassical-limit,FAIL"));
}

#[test]
fn runs_are_byte_identical() {
    for (args, input) in [
        (vec!["semiclassical"], SEMI),
        (vec!["heisenberg"], r#"{"samples": 32, "hbar": 0.5}"#),
        (vec!["kasprzak-verify", "--seed", "17"], r#"{"moduli": [5], "matrix": [[1]], "trials": 10}"#),
        (vec!["suite", "--only", "1,3,9", "--seed", "5"], ""),
    ] {
        let first = run(&args, input);
        let second = run(&args, input);
        assert_eq!(first.status.code(), Some(0), "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn partial_suite_runs_only_the_named_criteria() {
    let out = run(&["suite", "--only", "2,13"], "");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let ids: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(ids, ["2", "13"]);
}
