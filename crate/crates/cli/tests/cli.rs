use std::fs;
use std::process::{Command, Output};

use thetaring::verify_certificate;
use thetaring_cli::certfile;

fn thetaring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thetaring"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bound_examples() {
    let o = thetaring(&["bound", "12"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "6\n");
    assert_eq!(stdout(&thetaring(&["bound", "2"])), "3\n");
    assert_eq!(stdout(&thetaring(&["bound", "-8"])), "12\n");
    let zero = thetaring(&["bound", "0"]);
    assert_eq!(zero.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&zero.stderr).contains("no torsion bound"));
}

#[test]
fn usage_errors_exit_with_two() {
    let o = thetaring(&["axioms", "--p", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not prime"));
    assert_eq!(thetaring(&["verify", "--e", "0"]).status.code(), Some(2));
    assert_eq!(
        thetaring(&["axioms", "--trials", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        thetaring(&["verify", "--format", "yaml"]).status.code(),
        Some(2)
    );
}

#[test]
fn axioms_report_is_reproducible() {
    let run = || {
        stdout(&thetaring(&[
            "axioms", "--p", "2", "--trials", "1", "--seed", "5", "--format", "machine",
        ]))
    };
    let a = run();
    assert_eq!(a, run());
    assert!(a.contains("\"verdict\": {\n        \"status\": \"pass\""));
}

#[test]
fn verify_base_case() {
    let o = thetaring(&["verify", "--p", "2", "--e", "1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(
        out.contains("sharpness        m=2   pass  witness 2*y"),
        "{out}"
    );
    assert!(out.ends_with("overall: pass\n"));
}

#[test]
fn span_limit_skips() {
    let o = thetaring(&[
        "verify",
        "--p",
        "2",
        "--e",
        "5",
        "--span-limit",
        "64",
        "--format",
        "machine",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("\"status\": \"skipped\""));
    assert!(out.contains("span dimension 1024 exceeds limit 64"));
}

#[test]
fn fn_check_with_cap_one_only_skips() {
    let o = thetaring(&[
        "fn-check",
        "--p",
        "5",
        "--degree-cap",
        "1",
        "--format",
        "machine",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("\"n\": 0"));
    assert!(!out.contains("\"n\": 1"));
}

#[test]
fn written_certificates_verify() {
    let dir = tempfile::tempdir().unwrap();
    let certs = dir.path().join("certs");
    let report = dir.path().join("report.json");
    let o = Command::new(env!("CARGO_BIN_EXE_thetaring"))
        .args([
            "verify",
            "--p",
            "2",
            "--p",
            "3",
            "--e",
            "1",
            "--e",
            "2",
            "--out-certs",
        ])
        .arg(&certs)
        .arg("--out-report")
        .arg(&report)
        .output()
        .unwrap();
    assert!(o.status.success());
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let mut referenced = 0;
    for cell in json["cells"].as_array().unwrap() {
        for check in cell["checks"].as_array().unwrap() {
            if let Some(name) = check["certificate"].as_str() {
                let c = certfile::read(&certs.join(name)).unwrap();
                assert!(verify_certificate(&c), "{name}");
                referenced += 1;
            }
        }
    }
    let files: Vec<_> = fs::read_dir(&certs).unwrap().collect();
    assert_eq!(files.len(), referenced);
    assert!(referenced > 20);

    let nil = certs.join("p2_e1_m2_nilpotence.toml");
    let o = thetaring(&["check-cert", nil.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with(": valid\n"));

    let tampered = dir.path().join("bad.toml");
    let text = fs::read_to_string(&nil).unwrap().replace("x^3", "x^2");
    fs::write(&tampered, text).unwrap();
    let o = thetaring(&["check-cert", tampered.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}
