//! The `apoly` binary: output formats, exit codes and the result cache.

mod common;

use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, Output};

use apoly::ajspec::AjVerdict;
use apoly::cli::{AjCheckReport, ApolyReport, BatchReport, BatchStatus, ScanStatus, SlopesReport, Su2ScanReport};
use apoly::elim::Verdict;
use common::{ml, FIGURE8_NONTRIVIAL, TREFOIL_FULL};

fn apoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apoly")).args(args).env_remove("APOLY_CONFIG").output().unwrap()
}

fn ok<T: serde::de::DeserializeOwned>(args: &[&str]) -> T {
    let out = apoly(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn slopes(s: &[apoly::newton::Slope]) -> BTreeSet<String> {
    s.iter().map(|s| s.to_string()).collect()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

#[test]
fn apoly_of_trefoil_and_unknot() {
    let r: ApolyReport = ok(&["--dt", "4 6 2"]);
    assert!(r.result.full.eq_up_to_unit(&ml(TREFOIL_FULL)));
    assert!(r.result.nontrivial_part.eq_up_to_unit(&ml("L*M^6 + 1")));
    assert_eq!(r.result.verdict, Verdict::NonTrivial);
    let r: ApolyReport = ok(&["apoly", "--dt", ""]);
    assert_eq!(r.result.full, ml("L - 1"));
    assert_eq!(r.result.verdict, Verdict::TrivialUnknotLike);
    let r: ApolyReport = ok(&["--braid", "1 -2 1 -2", "--pretty"]);
    assert!(r.result.nontrivial_part.eq_up_to_unit(&ml(FIGURE8_NONTRIVIAL)));
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["--dt", "junk"][..],
        &["--dt", "4 6"],
        &["--pd", "X[1,2,3"],
        &[],
        &["--dt", "4 6 2", "--budget-seconds", "0"],
        &["--dt", "4 6 2", "--strategy", "fastest"],
        &["su2scan", "--dt", "4 6 2", "--fillings", "2/4"],
    ] {
        let out = apoly(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn timeout_exits_3_with_partial_report() {
    let t = std::time::Instant::now();
    let out = apoly(&["--dt", "6 8 10 12 14 16 2 4", "--strategy", "groebner", "--budget-seconds", "1"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    let partial: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(partial["error"], "EliminationTimeout");
    assert_eq!(partial["budget_seconds"], 1);
    assert!(t.elapsed().as_secs() < 30);
}

#[test]
fn unwritable_cache_record_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(apoly(&["--dt", "", "--cache-dir", d]).status.code(), Some(0));
    // replace the record by a non-empty directory: reads fail, and so does
    // the rename that would store the recomputed record
    let record = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::remove_file(&record).unwrap();
    std::fs::create_dir(&record).unwrap();
    std::fs::write(record.join("x"), "x").unwrap();
    let out = apoly(&["--dt", "", "--cache-dir", d]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn slopes_command() {
    let r: SlopesReport = ok(&["slopes", "--dt", "4 6 2"]);
    assert_eq!(slopes(&r.nontrivial.slopes), set(&["-6"]));
    assert_eq!(slopes(&r.full.slopes), set(&["-6", "0"]));
    let r: SlopesReport = ok(&["slopes", "--dt", ""]);
    assert_eq!(slopes(&r.full.slopes), set(&["0"]));
    let r: SlopesReport = ok(&["slopes", "--dt", "4 6 8 2"]);
    assert_eq!(slopes(&r.nontrivial.slopes), set(&["-4", "4"]));
    assert_eq!(r.nontrivial.vertices, vec![(4, 0), (8, 1), (4, 2), (0, 1)]);
}

#[test]
fn su2scan_command() {
    let r: Su2ScanReport = ok(&["su2scan", "--dt", "", "--fillings", "1"]);
    assert!(r.fillings.iter().all(|f| f.status == ScanStatus::NotFound && f.representations.is_empty()));
    let r: Su2ScanReport = ok(&["su2scan", "--dt", "4 6 2", "--fillings", "1/0", "--attempts", "50"]);
    assert_eq!(r.fillings[0].status, ScanStatus::NotFound);
    let r: Su2ScanReport = ok(&["su2scan", "--dt", "4 6 2", "--fillings", "1/1,1/2"]);
    assert!(r.fillings.iter().all(|f| f.status == ScanStatus::Found));
    assert!(r.distinct);
    for f in &r.fillings {
        assert!(f.boundary_points.iter().all(|p| p.filling_defect() < 1e-8));
    }
}

#[test]
fn ajcheck_command() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    };
    let tref = write("tref.txt", "Q^3*E + 1\n");
    let unk = write("unk.txt", "E - 1");
    let bad = write("bad.txt", "E Q +");
    let r: AjCheckReport = ok(&["ajcheck", &tref, "--dt", "4 6 2"]);
    assert_eq!(r.report.verdict, AjVerdict::MatchUpToAllowances);
    let r: AjCheckReport = ok(&["ajcheck", &unk, "--dt", ""]);
    assert_eq!(r.report.verdict, AjVerdict::Match);
    let r: AjCheckReport = ok(&["ajcheck", &unk, "--dt", "4 6 2"]);
    assert_eq!(r.report.verdict, AjVerdict::Mismatch);
    assert_eq!(apoly(&["ajcheck", &bad, "--dt", "4 6 2"]).status.code(), Some(2));
    assert_eq!(apoly(&["ajcheck", "/nonexistent/op.txt", "--dt", "4 6 2"]).status.code(), Some(2));
}

fn cache_files(dir: &Path) -> usize {
    std::fs::read_dir(dir).unwrap().count()
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    for args in [
        &["--dt", "4 6 2"][..],
        &["slopes", "--dt", "4 6 2"],
        &["su2scan", "--dt", "4 6 2", "--fillings", "1/1", "--attempts", "40"],
    ] {
        let mut with_cache = args.to_vec();
        with_cache.extend(["--cache-dir", d]);
        let fresh = apoly(args).stdout;
        let first = apoly(&with_cache).stdout;
        let before = cache_files(dir.path());
        let second = apoly(&with_cache).stdout;
        assert_eq!(first, fresh, "{args:?}");
        assert_eq!(second, first, "{args:?}");
        assert_eq!(cache_files(dir.path()), before);
    }
    // equivalent spellings share a record
    let before = cache_files(dir.path());
    apoly(&["--dt", " 4,6  2 ", "--cache-dir", d]);
    assert_eq!(cache_files(dir.path()), before);
}

#[test]
fn dump_system_lists_unknowns_and_equations() {
    let v: serde_json::Value = ok(&["--dt", "4 6 2", "--dump-system"]);
    assert_eq!(v["unknowns"].as_array().unwrap().len(), 10);
    assert_eq!(v["equations"].as_array().unwrap().len(), 15);
    assert_eq!(v["distinguished"], serde_json::json!(["M", "L"]));
}

#[test]
fn batch_over_selected_knots() {
    let r: BatchReport = ok(&["batch", "--only", "3_1,4_1,5_1", "--workers", "2"]);
    assert_eq!(r.finished, 3);
    assert!(r.jobs.iter().all(|j| j.status == BatchStatus::Ok && j.verdict == Some(Verdict::NonTrivial)));
    assert!(r.trivial_verdicts.is_empty());
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("apoly.conf");
    std::fs::write(&cfg, "budget_seconds = 1\nstrategy = groebner\n").unwrap();
    let run = |extra: &[&str]| {
        let mut args = vec!["--dt", "6 8 10 12 14 16 2 4"];
        args.extend(extra);
        Command::new(env!("CARGO_BIN_EXE_apoly")).args(&args).env("APOLY_CONFIG", &cfg).output().unwrap()
    };
    assert_eq!(run(&[]).status.code(), Some(3));
    std::fs::write(&cfg, "budget_seconds = nonsense\n").unwrap();
    assert_eq!(run(&[]).status.code(), Some(2));
}
