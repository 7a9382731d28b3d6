use std::path::PathBuf;
use std::process::{Command, Output};

use planarconst_cert::CertificateFile;
use planarconst_exact::{RatInterval, Rational};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planarconst"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("planarconst-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

#[test]
fn compute_all_is_deterministic() {
    let (a, b) = (scratch("a.json"), scratch("b.json"));
    let first = run(&["compute", "--constant", "all", "--cert-out", a.to_str().unwrap()]);
    let second = run(&["compute", "--constant", "all", "--cert-out", b.to_str().unwrap()]);
    assert!(first.status.success(), "{}", text(&first.stderr));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let out = text(&first.stdout);
    assert!(out.contains("rho 0.03672841258 .. 0.03672841259"), "{out}");
    assert_eq!(out.lines().count(), 8);
}

#[test]
fn written_certificates_verify() {
    let path = scratch("rho.json");
    let out = run(&["compute", "--constant", "rho", "--cert-out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let out = run(&["verify", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    assert!(text(&out.stdout).starts_with("accepted "));
}

#[test]
fn a_tampered_claim_exits_one_and_names_the_node() {
    let path = scratch("tampered.json");
    assert!(run(&["compute", "--constant", "rho", "--cert-out", path.to_str().unwrap()])
        .status
        .success());
    let mut file = CertificateFile::from_bytes(&std::fs::read(&path).unwrap()).unwrap();
    let cert = file.certificates.iter_mut().find(|c| c.name == "rho").unwrap();
    let claim = &cert.claim.enclosure;
    let nudged = claim.hi() + &Rational::pow10(-30);
    cert.claim.enclosure = RatInterval::new(claim.lo().clone(), nudged).unwrap();
    std::fs::write(&path, file.to_bytes()).unwrap();

    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = text(&out.stderr);
    assert!(err.contains("rejected at certificates["), "{err}");
    assert!(err.contains("](rho)/evidence/node"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["compute", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "--constant", "pi"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "--budget", "one"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn a_budget_below_the_floor_is_a_failure() {
    let out = run(&["compute", "--constant", "t0", "--t0-width", "1e-40"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("sanity floor"));
}

#[test]
fn missing_files_are_reported() {
    let out = run(&["verify", "/nonexistent/cert.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("cannot read"));
}

#[test]
fn show_prints_claims_at_the_requested_precision() {
    let path = scratch("show.json");
    assert!(run(&["compute", "--constant", "t0", "--cert-out", path.to_str().unwrap()])
        .status
        .success());
    let out = text(&run(&["show", path.to_str().unwrap(), "--digits", "4"]).stdout);
    assert!(out.contains("t0 0.6263 .. 0.6264"), "{out}");
}
