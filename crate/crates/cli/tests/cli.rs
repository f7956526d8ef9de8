use lehmer_cli::record::ResultRecord;
use std::process::{Command, Output};

fn lehmer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lehmer")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn record_of(o: &Output) -> ResultRecord {
    let text = stdout(o);
    let line = text.lines().find_map(|l| l.strip_prefix("record: ")).unwrap();
    ResultRecord::parse_line(line).unwrap()
}

#[test]
fn analyze_golden_ratio() {
    let o = lehmer(&["analyze", "x^2-x-1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = record_of(&o);
    assert!((r.height - 0.240606).abs() < 1e-6);
    assert!(!r.torsion);
}

#[test]
fn analyze_list_syntax_and_normalization() {
    // -2x^2 + 2x + 2 normalizes to x^2 - x - 1
    let o = lehmer(&["analyze", "[2,2,-2]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(record_of(&o).polynomial, "[-1,-1,1]");
}

#[test]
fn analyze_torsion() {
    let o = lehmer(&["analyze", "x^2+x+1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = record_of(&o);
    assert!(r.torsion && r.vacuous && r.height.abs() < 1e-12);
}

#[test]
fn invalid_inputs_exit_2() {
    for args in [
        vec!["analyze", "0"],
        vec!["analyze", "x^2+*3"],
        vec!["analyze", "x^2-2x+1"],
        vec!["analyze", "x^2", "--primes", "4"],
        vec!["scan", "--degrees", "3..2"],
        vec!["verify", "unknown"],
        vec!["thresholds", "-d", "10", "-p", "6"],
    ] {
        let o = lehmer(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = lehmer(&["analyze", "x^2+*3"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 4"));
}

#[test]
fn thresholds_table() {
    let o = lehmer(&["thresholds", "-d", "100", "-p", "3", "-f", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.starts_with("h >= c/d") && l.contains(" 51 ")));
    let o = lehmer(&["thresholds", "-d", "100", "-p", "2"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("growth") && l.contains(" 61 ")));
    let o = lehmer(&["thresholds", "-d", "2", "-p", "2"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("growth") && l.contains("infeasible")));
}

#[test]
fn scan_monic_quadratics_with_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.txt");
    let csv = dir.path().join("q.csv");
    let o = lehmer(&[
        "scan",
        "--degrees",
        "2..2",
        "--coef-bound",
        "2",
        "--monic",
        "--out",
        out.to_str().unwrap(),
        "--summary-csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("#run {"));
    assert_eq!(text.lines().count(), 16);
    let csv = std::fs::read_to_string(&csv).unwrap();
    assert!(csv.contains("candidates,20\n") && csv.contains("records,15\n") && csv.contains("violations,0\n"));
}

#[test]
fn scan_resume_after_interruption() {
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    let base = ["scan", "--degrees", "1..3", "--coef-bound", "2", "--primes", "2,3"];
    let full = lehmer(&[&base[..], &["--out", &path("full.txt")]].concat());
    assert_eq!(full.status.code(), Some(0));
    let cut = lehmer(&[&base[..], &["--out", &path("cut.txt"), "--stop-after", "20"]].concat());
    assert_ne!(cut.status.code(), Some(0));
    let resumed = lehmer(&[&base[..], &["--out", &path("cut.txt"), "--workers", "2"]].concat());
    assert_eq!(resumed.status.code(), Some(0));
    assert!(stdout(&resumed).contains("resumed at canonical index"));
    assert_eq!(std::fs::read(path("full.txt")).unwrap(), std::fs::read(path("cut.txt")).unwrap());
    // a different configuration must not append to the file
    let other = lehmer(&["scan", "--degrees", "1..2", "--coef-bound", "2", "--out", &path("cut.txt")]);
    assert_eq!(other.status.code(), Some(2));
}

#[test]
fn verify_quick_suites() {
    for suite in ["padic", "bounds", "mignotte"] {
        let o = lehmer(&["verify", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).contains("PASS"));
    }
    let o = lehmer(&["verify", "heights"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("height of x^d - 2: 20 cases"));
}
