use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tensorcodes")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn entries(dir: &Path) -> usize {
    fs::read_dir(dir).unwrap().count()
}

#[test]
fn counterexample_certificate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("a.cert");
    let report = dir.path().join("r.jsonl");
    let out = run(&[
        "certify-counterexample",
        "--t",
        "1",
        "--cert",
        cert.to_str().unwrap(),
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&report).unwrap();
    assert!(text.contains("\"upper\":\"1/3\""));
    assert!(fs::read_to_string(&cert).unwrap().contains("bound 1/3"));
    assert_eq!(code(&run(&["verify-certificate", "--cert", cert.to_str().unwrap()])), 0);

    let tampered = fs::read_to_string(&cert).unwrap().replace("bound 1/3", "bound 1/9");
    fs::write(&cert, tampered).unwrap();
    assert_eq!(code(&run(&["verify-certificate", "--cert", cert.to_str().unwrap()])), 1);
}

#[test]
fn malformed_flags_exit_two_without_writing() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("r.csv");
    let o = out_path.to_str().unwrap();
    for args in [
        vec!["robustness", "--m", "two", "--out", o],
        vec!["robustness", "--format", "xml", "--out", o],
        vec!["robustness", "--instance", "rep2", "--seed", "1", "--out", o],
        vec!["rho-sampled", "--instance", "rep2", "--out", o],
        vec!["robustness", "--instance", "hamming", "--out", o],
        vec!["constants", "--m", "2", "--out", o],
        vec!["frobnicate", "--out", o],
    ] {
        assert_eq!(code(&run(&args)), 2, "{args:?}");
    }
    assert_eq!(entries(dir.path()), 0);
}

#[test]
fn lemma_checks_pass_on_rep2() {
    for m in ["2", "3"] {
        let out = run(&["check-lemmas", "--instance", "rep2", "--m", m]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let stdout = String::from_utf8(out.stdout).unwrap();
        assert!(!stdout.contains("\"holds\":false"));
    }
}

#[test]
fn reports_are_byte_identical_across_runs_and_jobs() {
    let a = run(&["robustness", "--t", "1", "--mode", "sampled", "--samples", "40", "--seed", "9", "--format", "csv"]);
    let b = run(&[
        "robustness",
        "--t",
        "1",
        "--mode",
        "sampled",
        "--samples",
        "40",
        "--seed",
        "9",
        "--format",
        "csv",
        "--jobs",
        "1",
    ]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("constant,rho_r,\"rs[3,1] m=2\",sampled,"));
    assert!(row.ends_with(",9,40,"));
}

#[test]
fn config_file_fills_gaps_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "instance = \"rep2\"\nm = 3\nk = 2\nformat = \"csv\"\n").unwrap();
    let c = cfg.to_str().unwrap();
    let from_file = String::from_utf8(run(&["robustness", "--config", c]).stdout).unwrap();
    assert!(from_file.contains("constant,rho_r,rep2 m=3,exact,1/2,1/2"));
    let overridden = String::from_utf8(run(&["robustness", "--config", c, "--m", "2", "--k", "1"]).stdout).unwrap();
    assert!(overridden.contains("constant,rho_r,rep2 m=2,exact,1/2,1/2"));
    fs::write(&cfg, "colour = \"red\"\n").unwrap();
    assert_eq!(code(&run(&["robustness", "--config", c])), 2);
}

#[test]
fn constants_for_three_axes() {
    let out = run(&["constants", "--m", "3", "--rho", "1/2", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("constant,M,m=3,exact,3/1,3/1"));
    assert!(text.contains("constant,alpha_r,m=3,exact,1/2916,1/2916"));
    assert!(text.contains("constant,alpha(1/2),m=3,exact,1/768,1/768"));
}

#[test]
fn ps_corollary_reports_zero_violations() {
    let out = run(&["ps-corollary", "--t", "2", "--samples", "30", "--seed", "4"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("violations=0"));
    assert!(text.contains("\"seed\":4,\"samples\":30"));
}

#[test]
fn empty_csv_output_still_has_header() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("show.csv");
    assert_eq!(code(&run(&["show", "--format", "csv", "--out", p.to_str().unwrap()])), 0);
    assert_eq!(fs::read_to_string(&p).unwrap().lines().count(), 1);
}
