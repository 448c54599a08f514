//! Acceptance run: one PASS/FAIL line per criterion, in order.
//!
//! Runs without the libtest harness so the criteria execute one after the
//! other and their timings are not disturbed by each other. The sweep
//! budget per knot is `APOLY_SWEEP_BUDGET` seconds (default 60).

mod common;
#[path = "prop_ajspec.rs"]
mod prop_ajspec;
#[path = "prop_lattice.rs"]
mod prop_lattice;

use std::collections::BTreeSet;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use apoly::ajspec::AjVerdict;
use apoly::charvar::involution_image;
use apoly::cli::{ajcheck_of, cmd_apoly, cmd_su2scan, slopes_of, ApolyReport, KnotInput, KnotJob, ScanStatus};
use apoly::elim::Verdict;
use apoly::knotio::{bundled_knots, FillingSpec};
use apoly::mpoly::SparsePoly;
use apoly::newton::Slope;
use apoly::su2::{lattice_lemma_check, LatticeFamily, Subgroup, DEFAULT_ATTEMPTS};
use common::{ml, FIGURE8_NONTRIVIAL, TREFOIL_FULL};
use num_rational::Rational64;
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn apoly(name: &str, code: &str, budget: u64) -> Result<ApolyReport, String> {
    let mut job = KnotJob::new(name, KnotInput::dt(code));
    job.options.budget_seconds = budget;
    cmd_apoly(&job).map_err(|e| format!("{name}: {e}"))
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let r = apoly("unknot", "", 300)?;
    let dt = t.elapsed();
    check(r.result.full == ml("L - 1"), format!("full = {}", r.result.full))?;
    check(r.result.verdict == Verdict::TrivialUnknotLike, format!("{:?}", r.result.verdict))?;
    check(dt < Duration::from_secs(1), format!("{dt:?}"))?;
    Ok(format!("L - 1, TrivialUnknotLike, {dt:.2?}"))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let r = apoly("3_1", "4 6 2", 300)?;
    let dt = t.elapsed();
    check(r.result.full.eq_up_to_unit(&ml(TREFOIL_FULL)), format!("full = {}", r.result.full))?;
    check(r.result.verdict == Verdict::NonTrivial, format!("{:?}", r.result.verdict))?;
    check(dt < Duration::from_secs(60), format!("{dt:?}"))?;
    Ok(format!("{}, {dt:.2?}", r.result.full))
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let r = apoly("4_1", "4 6 8 2", 300)?;
    let dt = t.elapsed();
    let nt = &r.result.nontrivial_part;
    check(nt.eq_up_to_unit(&ml(FIGURE8_NONTRIVIAL)), format!("nontrivial part = {nt}"))?;
    let slopes: BTreeSet<Slope> = slopes_of(&r).map_err(|e| e.to_string())?.nontrivial.slopes.into_iter().collect();
    let expected: BTreeSet<Slope> = [4, -4].map(|s| Slope::Finite(Rational64::from_integer(s))).into();
    check(slopes == expected, format!("slopes {slopes:?}"))?;
    check(dt < Duration::from_secs(300), format!("{dt:?}"))?;
    Ok(format!("slopes {{-4, 4}}, {dt:.2?}"))
}

struct Sweep {
    budget: u64,
    finished: Vec<(String, SparsePoly)>,
    failures: Vec<String>,
}

fn sweep() -> Sweep {
    let budget = std::env::var("APOLY_SWEEP_BUDGET").ok().and_then(|s| s.parse().ok()).unwrap_or(60);
    let mut out = Sweep { budget, finished: Vec::new(), failures: Vec::new() };
    for (name, code) in bundled_knots() {
        let t = Instant::now();
        match apoly(name, code, budget) {
            Ok(r) => {
                println!(
                    "    {name}: finished in {:.1?}, {:?}, (L-1)^{}",
                    t.elapsed(),
                    r.result.verdict,
                    r.result.l_minus_one_power
                );
                if r.result.verdict != Verdict::NonTrivial {
                    out.failures.push(format!("{name}: {:?}", r.result.verdict));
                }
                out.finished.push((name.to_string(), r.result.full));
            }
            Err(e) if e.contains("budget") => println!("    {name}: timeout after {:.1?}", t.elapsed()),
            Err(e) => {
                println!("    {name}: error {e}");
                out.failures.push(e);
            }
        }
    }
    out
}

fn is_power_of_l_minus_one(p: &SparsePoly) -> bool {
    let l1 = ml("L - 1");
    let mut q = p.clone();
    while let Ok(r) = q.exact_div(&l1) {
        q = r;
    }
    q.is_constant()
}

fn criterion_4(s: &Sweep) -> Outcome {
    check(s.failures.is_empty(), s.failures.join("; "))?;
    let n = s.finished.len();
    check(n >= 15, format!("only {n} knots finished"))?;
    let powers: Vec<&str> =
        s.finished.iter().filter(|(_, p)| is_power_of_l_minus_one(p)).map(|(n, _)| n.as_str()).collect();
    check(powers.is_empty(), format!("power of L - 1: {powers:?}"))?;
    Ok(format!("{n} of {} finished within {} s each, all NonTrivial", bundled_knots().len(), s.budget))
}

fn criterion_5(s: &Sweep) -> Outcome {
    check(!s.finished.is_empty(), "nothing finished")?;
    let bad: Vec<&str> =
        s.finished.iter().filter(|(_, p)| !involution_image(p).eq_up_to_unit(p)).map(|(n, _)| n.as_str()).collect();
    check(bad.is_empty(), format!("not symmetric: {bad:?}"))?;
    Ok(format!("{} polynomials symmetric", s.finished.len()))
}

fn criterion_6(s: &Sweep) -> Outcome {
    check(!s.finished.is_empty(), "nothing finished")?;
    let l1 = ml("L - 1");
    let bad: Vec<&str> =
        s.finished.iter().filter(|(_, p)| p.exact_div(&l1).is_err()).map(|(n, _)| n.as_str()).collect();
    check(bad.is_empty(), format!("not divisible: {bad:?}"))?;
    Ok(format!("{} eliminants divisible by L - 1", s.finished.len()))
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    let job = KnotJob::new("3_1", KnotInput::dt("4 6 2"));
    let fillings = [FillingSpec::new(1, 1).unwrap(), FillingSpec::new(1, 2).unwrap()];
    let r = cmd_su2scan(&job, &fillings, DEFAULT_ATTEMPTS).map_err(|e| e.to_string())?;
    let dt = t.elapsed();
    for f in &r.fillings {
        check(f.status == ScanStatus::Found, format!("{}: not found", f.filling))?;
        check(
            f.representations.iter().all(|rep| rep.non_cyclic && rep.residual < 1e-8),
            format!("{}: residual", f.filling),
        )?;
        for p in &f.boundary_points {
            check(p.filling_defect() < 1e-8, format!("{}: |m l^n - 1| = {:e}", f.filling, p.filling_defect()))?;
        }
    }
    let pts: Vec<_> = r.fillings.iter().flat_map(|f| f.boundary_points.iter()).collect();
    let mut min = f64::INFINITY;
    for a in &pts {
        for b in &pts {
            if a.filling != b.filling {
                min = min.min(a.distance(b));
            }
        }
    }
    check(min > 1e-6 && r.distinct, format!("closest cross pair {min:e}"))?;
    check(dt < Duration::from_secs(30), format!("{dt:?}"))?;
    Ok(format!("{} boundary points, closest cross pair {min:.3e}, {dt:.2?}", pts.len()))
}

fn line_x1(subgroups: Vec<Subgroup>, v0: (i64, i64)) -> LatticeFamily {
    LatticeFamily { base: (1, 0), direction: (0, 1), subgroups, excluded_point: v0 }
}

fn criterion_8() -> Outcome {
    // rank-one family
    let f = line_x1((1..=5).map(|n| Subgroup::new((1, n), (0, 0))).collect(), (1, 0));
    let r = lattice_lemma_check(&f, 10).map_err(|e| e.to_string())?;
    check(r.covered.len() == 5 && r.covered.iter().all(|(_, m)| m.len() == 1), "rank one: coverage")?;
    check(r.uncovered_count_doubled > r.uncovered_count, "rank one: growth")?;
    // whole lattice
    for k in -10..=10 {
        let r = lattice_lemma_check(&line_x1(vec![Subgroup::new((1, 0), (0, 1))], (1, k)), 10)
            .map_err(|e| e.to_string())?;
        check(!r.excluded_point_excluded, format!("Z^2 excludes (1, {k})"))?;
    }
    // parity and mod 3
    let f = line_x1(vec![Subgroup::new((1, 1), (0, 2)), Subgroup::new((1, 2), (0, 3))], (1, 0));
    let r = lattice_lemma_check(&f, 50).map_err(|e| e.to_string())?;
    check(r.excluded_point_excluded, "(1, 0) covered")?;
    check(r.uncovered_count_doubled > r.uncovered_count, "window 100 not above window 50")?;
    // randomized families against enumeration
    let mut runner = TestRunner::new_with_rng(
        Config { cases: 100, failure_persistence: None, ..Config::default() },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    runner.run(&prop_lattice::family(), |f| prop_lattice::report_agrees(&f, 200)).map_err(|e| e.to_string())?;
    Ok("three examples reproduced, 100 random families agree at window 200".into())
}

fn criterion_9(unknot: &ApolyReport, trefoil: &ApolyReport) -> Outcome {
    for (op, knot, expected) in [
        ("Q^3*E + 1", trefoil, AjVerdict::MatchUpToAllowances),
        ("E - 1", unknot, AjVerdict::Match),
        ("E - 1", trefoil, AjVerdict::Mismatch),
    ] {
        let r = ajcheck_of(op, knot).map_err(|e| e.to_string())?;
        check(r.report.verdict == expected, format!("{op}: {:?}", r.report.verdict))?;
    }
    Ok("MatchUpToAllowances, Match, Mismatch".into())
}

fn replay<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), proptest::test_runner::TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new_with_rng(
        Config { cases: 1000, failure_persistence: None, ..Config::default() },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn criterion_10() -> Outcome {
    use prop_ajspec::{associative, confluent, operator};
    use prop_mpoly::*;
    replay("ring axioms", (poly(4, 3), poly(4, 3), poly(4, 3)), |(a, b, c)| ring_axioms(a, b, c))?;
    replay("resultant routes", (in_x(4, 3), in_x(4, 3)), |(a, b)| resultant_routes_agree(a, b))?;
    replay("resultant vanishing", (in_x(3, 3), in_x(3, 3), in_x(2, 2), proptest::bool::ANY), |(a, b, f, p)| {
        resultant_vanishes_iff_common_factor(a, b, f, p)
    })?;
    replay("gcd routes", (int_poly(3, 3), int_poly(3, 3), int_poly(3, 2)), |(a, b, f)| gcd_routes_agree(a, b, f))?;
    replay("buchberger", (proptest::collection::vec(int_poly(3, 3), 1..=3), 0..3usize), |(g, o)| {
        buchberger_s_polynomials_reduce(g, o)
    })?;
    replay("associativity", (operator(), operator(), operator(), operator()), |(a, b, c, d)| associative(a, b, c, d))?;
    replay("confluence", (operator(), operator(), proptest::collection::vec(0usize..64, 1..16)), |(a, b, p)| {
        confluent(a, b, p)
    })?;
    Ok("7 properties x 1000 cases".into())
}

fn main() {
    let mut failed = 0;
    let mut report = |n: u32, outcome: std::thread::Result<Outcome>| {
        let line = match outcome {
            Ok(Ok(detail)) => format!("criterion {n:>2}: PASS  {detail}"),
            Ok(Err(why)) => {
                failed += 1;
                format!("criterion {n:>2}: FAIL  {why}")
            }
            Err(_) => {
                failed += 1;
                format!("criterion {n:>2}: FAIL  panicked")
            }
        };
        println!("{line}");
        std::io::stdout().flush().ok();
    };
    let run = |f: &dyn Fn() -> Outcome| catch_unwind(AssertUnwindSafe(f));

    report(1, run(&criterion_1));
    report(2, run(&criterion_2));
    report(3, run(&criterion_3));
    let s = catch_unwind(sweep);
    match &s {
        Ok(s) => {
            report(4, run(&|| criterion_4(s)));
            report(5, run(&|| criterion_5(s)));
            report(6, run(&|| criterion_6(s)));
        }
        Err(_) => (4..=6).for_each(|n| report(n, Err(Box::new("sweep panicked")))),
    }
    report(7, run(&criterion_7));
    report(8, run(&criterion_8));
    report(9, run(&|| criterion_9(&apoly("unknot", "", 300)?, &apoly("3_1", "4 6 2", 300)?)));
    report(10, run(&criterion_10));
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
