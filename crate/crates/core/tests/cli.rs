// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::process::{Command, Output};

use qhvar::verify::VerificationReport;

fn qhvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhvar")).args(args).env_remove("QHVAR_WORKERS").output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_reports(args: &[&str]) -> (i32, Vec<VerificationReport>) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = qhvar(&all);
    (code(&out), serde_json::from_slice(&out.stdout).unwrap())
}

fn report<'a>(reports: &'a [VerificationReport], claim: &str) -> &'a VerificationReport {
    reports.iter().find(|r| r.claim == claim).unwrap()
}

#[test]
fn verify_bm_q3() {
    let (status, reports) = json_reports(&["verify-bm", "--q", "3", "--a", "1,1", "--b", "0,1", "--full"]);
    assert_eq!(status, 0);
    assert!(reports.iter().all(|r| r.pass == Some(true)));
    let scan = report(&reports, "two-character-mab");
    assert_eq!(scan.measured["histogram"], serde_json::json!({ "28": 540, "37": 280 }));
    let b = report(&reports, "b-infinity-split");
    assert_eq!(b.measured["labels"], 19);
    assert_eq!(b.measured["contained"], 1);
    assert_eq!(scan.params.a.as_deref(), Some("1,1"));
    assert_eq!(scan.params.mode.as_deref(), Some("full"));
}

#[test]
fn verify_bm_q5_counts_lines() {
    let (status, reports) = json_reports(&["verify-bm", "--q", "5", "--full"]);
    assert_eq!(status, 0);
    assert_eq!(report(&reports, "spread-lines-in-bprime").measured["count"], 51);
}

#[test]
fn verify_bt_sampled() {
    let (status, reports) = json_reports(&["verify-bt", "--e", "3", "--sampled", "10000", "--seed", "7"]);
    assert_eq!(status, 0);
    let v = report(&reports, "v-infinity-split");
    assert_eq!(v.measured["labels"], 193);
    assert_eq!(v.measured["contained"], 65);
    let scan = report(&reports, "two-character-heps");
    assert_eq!(scan.params.seed, Some(7));
    assert_eq!(scan.measured["hyperplanes"], 10_000);
}

#[test]
fn counts_prints_the_number() {
    let out = qhvar(&["counts", "--theorem", "bm-unitals", "--p", "2", "--n", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "2\n");
    let out = qhvar(&["counts", "--theorem", "bm-varieties", "--p", "3", "--n", "2"]);
    assert_eq!(stdout(&out), "4\n");
}

#[test]
fn spread_selftest_and_classify() {
    let (status, reports) = json_reports(&["spread-selftest", "--q", "3"]);
    assert_eq!(status, 0);
    assert_eq!(reports[0].measured["lines"], 91);
    assert_eq!(reports[0].measured["covered"], 364);

    let (status, reports) = json_reports(&["classify-quadric", "--q", "4", "--a", "0,1", "--b", "0,1"]);
    assert_eq!(status, 0);
    assert_eq!(reports[0].measured["det"], 1);
    assert_eq!(reports[0].measured["kind"], "hyperbolic");
    assert_eq!(reports[0].measured["points"], 357);
}

#[test]
fn exit_codes() {
    // B is not two-character, so the claim fails.
    assert_eq!(code(&qhvar(&["two-character", "--q", "3", "--variety", "bab"])), 1);
    assert_eq!(code(&qhvar(&["verify-bm", "--q", "6"])), 2);
    assert_eq!(code(&qhvar(&["verify-bm", "--q", "3", "--a", "0,0"])), 2);
    assert_eq!(code(&qhvar(&["verify-bm", "--q", "3", "--b", "1,0"])), 2);
    assert_eq!(code(&qhvar(&["verify-bt", "--e", "2"])), 2);
    assert_eq!(code(&qhvar(&["verify-bt", "--e", "5", "--full"])), 3);
    assert_eq!(code(&qhvar(&["verify-bm", "--q", "3", "--full", "--sampled", "5"])), 2);
    assert_eq!(code(&qhvar(&["no-such-command"])), 2);
    assert_eq!(code(&qhvar(&["--help"])), 0);
}

#[test]
fn large_bt_records_not_run() {
    let (status, reports) = json_reports(&["verify-bt", "--e", "5"]);
    assert_eq!(status, 0);
    assert_eq!(report(&reports, "two-character-heps").pass, None);
    assert_eq!(report(&reports, "union-of-lines").pass, None);
    assert_eq!(report(&reports, "v-infinity-split").pass, Some(true));
}

#[test]
fn identical_runs_write_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.json"), dir.path().join("b.json")];
    for p in &paths {
        let args = ["verify-bt", "--e", "3", "--sampled", "3000", "--seed", "11", "--no-timing", "--format", "json", "--out"];
        let out = qhvar(&[&args[..], &[p.to_str().unwrap()]].concat());
        assert_eq!(code(&out), 0);
        assert!(out.stdout.is_empty());
    }
    let (a, b) = (fs::read(&paths[0]).unwrap(), fs::read(&paths[1]).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);
    assert!(!dir.path().join("a.json.tmp").exists());
}

#[test]
fn csv_histogram_and_workers() {
    let out = qhvar(&["two-character", "--q", "3", "--format", "csv", "--workers", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "size,hyperplanes\n28,540\n37,280\n");

    let out = Command::new(env!("CARGO_BIN_EXE_qhvar"))
        .args(["two-character", "--q", "4", "--format", "csv", "--kernel", "point-list"])
        .env("QHVAR_WORKERS", "1")
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "size,hyperplanes\n65,3264\n81,1105\n");
}

#[test]
fn checkpointed_scan_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("scan.ckpt");
    let ckpt = ckpt.to_str().unwrap();
    let args = ["two-character", "--q", "4", "--format", "csv", "--checkpoint", ckpt];
    let first = qhvar(&args);
    assert_eq!(code(&first), 0);
    assert!(fs::metadata(ckpt).is_ok());
    let second = qhvar(&args);
    assert_eq!(stdout(&first), stdout(&second));

    let other = qhvar(&["two-character", "--q", "4", "--variety", "hermitian", "--checkpoint", ckpt]);
    assert_eq!(code(&other), 2);
}

#[test]
fn field_overrides() {
    let (status, reports) = json_reports(&["verify-bt", "--e", "3", "--modulus", "1,0,1,1", "--sampled", "500"]);
    assert_eq!(status, 0);
    assert_eq!(reports[0].params.modulus, "1,0,1,1");
    let (status, reports) = json_reports(&["verify-bm", "--q", "5", "--delta", "3"]);
    assert_eq!(status, 0);
    assert_eq!(reports[0].params.delta, 3);
    assert_eq!(code(&qhvar(&["verify-bm", "--q", "5", "--delta", "4"])), 2);
    assert_eq!(code(&qhvar(&["verify-bm", "--q", "8", "--p", "2", "--e", "2"])), 2);
}
