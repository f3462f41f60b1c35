use std::process::{Command, Output};

use qbinsum::report::{ReportRecord, Status};

fn qbinsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbinsum"))
        .args(args)
        .env_remove(qbinsum_cli::JOBS_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn records(o: &Output) -> Vec<ReportRecord> {
    serde_json::from_slice(&o.stdout).expect("valid JSON report")
}

/// Records with timings zeroed, for comparing runs.
fn timeless(mut rs: Vec<ReportRecord>) -> Vec<ReportRecord> {
    for r in &mut rs {
        r.elapsed_ms = 0.0;
    }
    rs
}

#[test]
fn calkin_sweep_emits_one_record_per_case() {
    let out = qbinsum(&["verify", "calkin", "--n", "1..20", "--r", "1..5", "--output", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let rs = records(&out);
    assert_eq!(rs.len(), 100);
    assert!(rs.iter().all(|r| r.holds));
    assert_eq!(rs[0].params.to_string(), "n=1 r=1");
    assert_eq!(rs[99].params.to_string(), "n=20 r=5");
}

#[test]
fn inspect_qbinom_prints_expansion_and_factorization() {
    let out = qbinsum(&["inspect", "qbinom", "4", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1 + q + 2*q^2 + q^3 + q^4\nPhi_3 * Phi_4\n");
}

#[test]
fn inspect_dset_and_sum() {
    let out = qbinsum(&["inspect", "dset", "6", "3"]);
    assert_eq!(stdout(&out).trim(), "{2, 4, 5, 6}");
    let out = qbinsum(&["inspect", "sum", "power", "--n", "2", "--r", "4"]);
    assert_eq!(stdout(&out).trim(), "786");
    let out = qbinsum(&[
        "inspect",
        "sum",
        "triple",
        "--family",
        "six-four-two",
        "--n",
        "1",
        "--r",
        "1",
        "--s",
        "1",
        "--t",
        "1",
    ]);
    assert_eq!(stdout(&out).trim(), "120");
}

#[test]
fn excluded_triple_is_not_applicable() {
    let out = qbinsum(&[
        "verify", "thm2", "--claim", "t2c3", "--n", "2", "--r", "1", "--s", "1", "--t", "1", "--output", "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let rs = records(&out);
    assert_eq!(rs.len(), 1);
    assert_eq!(rs[0].status, Status::NotApplicable);
}

#[test]
fn failing_case_exits_one_with_counterexample() {
    let out = qbinsum(&[
        "verify",
        "congruence",
        "--dividend",
        "1 + q^2",
        "--modulus",
        "1 + q",
        "--output",
        "pretty",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("remainder: 2"), "{}", stdout(&out));
    let err = stderr(&out);
    assert!(err.contains("counterexample: claim=congruence"), "{err}");
    assert!(err.contains("modulus: 1 + q"), "{err}");
    assert!(err.contains("remainder: 2"), "{err}");
}

#[test]
fn holding_congruence_exits_zero() {
    let out = qbinsum(&[
        "verify",
        "congruence",
        "--dividend",
        "[-1, 0, 1]",
        "--modulus",
        "-1 + q",
        "--output",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(records(&out)[0].quotient_degree, Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["verify", "calkin", "--n", "5..1", "--r", "1"],
        &["verify", "calkin", "--n", "x", "--r", "1"],
        &["verify", "calkin", "--n", "1"],
        &["verify", "nonsense"],
        &["verify", "calkin", "--n", "1", "--r", "1", "--jobs", "0"],
        &["verify", "congruence", "--dividend", "1 + q", "--modulus", "0"],
        &["verify", "congruence", "--dividend", "1 +* q", "--modulus", "1"],
        &["verify", "thm1", "--n", "6", "--variant", "full-modulus"],
        &["verify", "gcd-window", "--n", "2", "--w", "1"],
        &["inspect", "cyclotomic", "0"],
    ];
    for args in cases {
        let out = qbinsum(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(!stderr(&out).is_empty());
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(qbinsum(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_round_trips() {
    let out = qbinsum(&[
        "verify", "lemmas", "--n", "1..4", "--p", "2,3", "--r", "1..2", "--output", "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let rs = records(&out);
    assert!(!rs.is_empty());
    let again: Vec<ReportRecord> = serde_json::from_str(&serde_json::to_string(&rs).unwrap()).unwrap();
    assert_eq!(again, rs);
}

#[test]
fn csv_has_header_row() {
    let out = qbinsum(&["verify", "calkin", "--n", "2", "--r", "3", "--output", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("claim_id,params,modulus,holds,status,quotient_degree,branch_note,elapsed_ms,remainder")
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("calkin,"), "{row}");
    assert!(row.contains(",true,holds,"), "{row}");
    assert!(lines.next().is_none());
}

#[test]
fn report_is_independent_of_worker_count() {
    let base = [
        "verify", "thm2", "--n", "1..3", "--r", "1..2", "--s", "1..2", "--t", "1..2", "--output", "json",
    ];
    let runs: Vec<Vec<ReportRecord>> = ["1", "2", "4"]
        .iter()
        .map(|j| {
            let mut args = base.to_vec();
            args.extend(["--jobs", j]);
            let out = qbinsum(&args);
            assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
            timeless(records(&out))
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
}

#[test]
fn jobs_env_var_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_qbinsum"))
        .args(["verify", "eq1", "--n", "1..3"])
        .env(qbinsum_cli::JOBS_ENV, "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_file_option() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = qbinsum(&[
        "verify",
        "gjz",
        "--h",
        "2",
        "--parts",
        "1..3",
        "--output",
        "json",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    let rs: Vec<ReportRecord> = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rs.len(), 9);
}

#[test]
fn library_entry_point_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = qbinsum_cli::run_with(
        ["qbinsum", "verify", "eq2", "--n", "1..5", "--output", "json"],
        &mut out,
        &mut err,
    );
    assert_eq!(code, 0);
    let rs: Vec<ReportRecord> = serde_json::from_slice(&out).unwrap();
    assert_eq!(rs.len(), 5);
}
