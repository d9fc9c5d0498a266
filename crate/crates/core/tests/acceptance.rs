//! Acceptance criteria, one test each. Every test prints a single
//! `PASS`/`FAIL` line on stderr (bypassing output capture) before asserting.

use std::io::Write;
use std::process::{Command, Stdio};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use specbound::bounds::{reference_asymptote, Asymptote};
use specbound::detbounds;
use specbound::growth::GrowthFunction;
use specbound::harness::{self, asymptote, shift, truncation, verify, Config, Report, Status};
use specbound::hmap::HEvaluator;
use specbound::linalg::{self, SingularProfile};
use specbound::models::{self, ExpClassParams};
use specbound::c64;

fn verdict(n: u32, title: &str, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "{tag} criterion {n}: {title} [{detail}]");
}

struct VerifyRun {
    report: Report,
    elapsed: Duration,
}

/// `specbound verify` with the default configuration, shared by criteria 1 to 3.
fn default_verify() -> &'static VerifyRun {
    static RUN: OnceLock<VerifyRun> = OnceLock::new();
    RUN.get_or_init(|| {
        let start = Instant::now();
        let report = verify::run(&Config::default(), Some(8), false).expect("verify run");
        VerifyRun { report, elapsed: start.elapsed() }
    })
}

/// `(rows, failures)` over the suites whose name starts with any prefix.
fn tally(report: &Report, prefixes: &[&str]) -> (usize, usize) {
    let rows: Vec<_> = report
        .rows
        .iter()
        .filter(|r| prefixes.iter().any(|p| r.suite.starts_with(p)))
        .collect();
    (rows.len(), rows.iter().filter(|r| r.status == Status::Fail).count())
}

fn error_rows(report: &Report) -> usize {
    report.rows_of("error").count()
}

#[test]
fn criterion_1_determinant_suite() {
    let run = default_verify();
    let cases = run.report.summary["cases"] as usize;
    let (rows, fails) = tally(&run.report, &["det_lower", "det_upper_leading", "det_upper_full"]);
    let lower = run.report.rows_of("det_lower").count();
    let secs = run.elapsed.as_secs_f64();
    let ok = cases >= 10_000 && lower == cases && fails == 0 && error_rows(&run.report) == 0 && secs < 120.0;
    verdict(
        1,
        "determinant inequalities over the random suite",
        ok,
        &format!("{cases} trials, {rows} rows, {fails} failures, {secs:.1} s"),
    );
    assert!(ok);
}

#[test]
fn criterion_2_weyl_suite() {
    let run = default_verify();
    let cases = run.report.summary["cases"] as usize;
    let mut ok = error_rows(&run.report) == 0;
    let mut detail = Vec::new();
    for suite in ["weyl_mult", "weyl_add", "weyl_shifted", "det_product"] {
        let (rows, fails) = tally(&run.report, &[suite]);
        ok &= rows == 2 * cases && fails == 0;
        detail.push(format!("{suite}: {rows} rows/{fails} fail"));
    }
    verdict(2, "Weyl inequalities and |det| = prod s_k", ok, &detail.join(", "));
    assert!(ok);
}

#[test]
fn criterion_3_main_bound_suite() {
    let run = default_verify();
    let cases = run.report.summary["cases"] as usize;
    let mut ok = error_rows(&run.report) == 0;
    let mut detail = Vec::new();
    for suite in ["main", "directed_ab", "directed_ba", "elsner"] {
        let rows = run.report.rows_of(suite).count();
        let fails = run.report.rows_of(suite).filter(|r| r.status == Status::Fail).count();
        ok &= rows == cases && fails == 0;
        detail.push(format!("{suite}: {rows}/{fails}"));
    }
    verdict(3, "main, directed and Elsner bounds", ok, &detail.join(", "));
    assert!(ok);
}

fn profile(v: &[f64]) -> GrowthFunction {
    GrowthFunction::profile(SingularProfile::from_unsorted(v.to_vec()).unwrap())
}

fn family() -> Vec<GrowthFunction> {
    let p = profile(&[1.3, 0.4, 0.4, 1e-3, 1e-9]);
    vec![
        p.clone(),
        profile(&[0.5]),
        GrowthFunction::exp_linear(),
        GrowthFunction::exp_class(1.0, 1.0).unwrap(),
        GrowthFunction::exp_class(0.5, 2.0).unwrap(),
        GrowthFunction::power_one_plus(1).unwrap(),
        GrowthFunction::power_one_plus(10).unwrap(),
        GrowthFunction::two_singular(2.0, 0.5, 5).unwrap(),
        GrowthFunction::two_singular(1.0, 0.0, 3).unwrap(),
        p.scale(7.0).unwrap(),
        specbound::growth::combine_max(&p, &GrowthFunction::power_one_plus(2).unwrap()),
    ]
}

fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).map(|e| 10f64.powf(e)).collect()
}

#[test]
fn criterion_4_h_operator_algebra() {
    // round trip in log y: an absolute error there is a relative error in y
    let mut worst_round = 0.0f64;
    for f in family() {
        let e = HEvaluator::new(f).unwrap();
        for i in 0..=1600 {
            let log_y = -200.0 + 0.25 * i as f64;
            let x = e.log_tilde_inverse(log_y).unwrap();
            worst_round = worst_round.max((e.log_tilde(x).unwrap() - log_y).abs());
        }
    }

    // monotonicity: pairs with F1 <= F2 checked on a grid before comparing H
    let base = [0.9, 0.5, 0.2, 0.05];
    let bumped = [1.0, 0.5, 0.3, 0.05];
    let trace: f64 = base.iter().sum();
    let pairs = vec![
        (profile(&base), profile(&bumped)),
        (profile(&base), GrowthFunction::exp_linear().scale(trace).unwrap()),
        (profile(&base), GrowthFunction::power_one_plus(4).unwrap().scale(base[0]).unwrap()),
        (GrowthFunction::exp_class(2.0, 1.0).unwrap(), GrowthFunction::exp_class(1.0, 1.0).unwrap()),
        (GrowthFunction::two_singular(1.0, 0.1, 4).unwrap(), GrowthFunction::power_one_plus(4).unwrap()),
    ];
    let mut ordered = true;
    let mut worst_mono = f64::NEG_INFINITY;
    for (f1, f2) in pairs {
        for i in 0..=400 {
            let log_r = -50.0 + 0.25 * i as f64;
            ordered &= f1.log_eval(log_r).unwrap() <= f2.log_eval(log_r).unwrap() + 1e-14;
        }
        let (h1, h2) = (HEvaluator::new(f1).unwrap(), HEvaluator::new(f2).unwrap());
        for t in log_spaced(-12.0, 2.0, 50) {
            let (a, b) = (h1.h_eval(t).unwrap(), h2.h_eval(t).unwrap());
            worst_mono = worst_mono.max((a - b) / b);
        }
    }

    // scaling: H_{F(m .)}(t) = m H_F(t/m)
    let mut worst_scale = 0.0f64;
    for f in family() {
        let e = HEvaluator::new(f.clone()).unwrap();
        for m in [0.1, 2.0, 100.0] {
            let em = HEvaluator::new(f.scale(m).unwrap()).unwrap();
            for t in log_spaced(-12.0, 2.0, 50) {
                let lhs = em.h_eval(t).unwrap();
                let rhs = m * e.h_eval(t / m).unwrap();
                worst_scale = worst_scale.max((lhs - rhs).abs() / rhs);
            }
        }
    }

    let ok = worst_round <= 1e-12 && ordered && worst_mono <= 1e-10 && worst_scale <= 1e-10;
    verdict(
        4,
        "H round trip, monotonicity and scaling",
        ok,
        &format!("round trip {worst_round:.2e}, ordering {worst_mono:.2e}, scaling {worst_scale:.2e}"),
    );
    assert!(ok);
}

#[test]
fn criterion_5_shift_family() {
    let cfg = Config::default();
    let report = shift::run(&cfg).unwrap();
    let n = cfg.n_shift as f64;
    let mut ok = cfg.n_shift == 6 && report.rows_of("shift_measured").count() == 5;
    let mut worst_closed = 0.0f64;
    for (row, &eps) in report.rows_of("shift_measured").zip(&cfg.epsilon_grid) {
        // eigenvalues solve l^n = eps^(n-1)
        let closed = eps.powf((n - 1.0) / n);
        worst_closed = worst_closed.max((row.measured - closed).abs() / closed);
    }
    ok &= worst_closed <= 1e-6;
    for suite in ["shift_two_singular", "shift_main"] {
        ok &= report.rows_of(suite).count() == 5;
        ok &= report.rows_of(suite).all(|r| r.bound >= r.measured);
    }
    let elsner = report.summary["slope_elsner"];
    ok &= (elsner - 1.0 / 6.0).abs() <= 0.02 / 6.0;
    verdict(
        5,
        "weighted-shift closed forms",
        ok,
        &format!("closed-form error {worst_closed:.2e}, Elsner slope {elsner:.6}"),
    );
    assert!(ok);
}

#[test]
fn criterion_6_fixed_parameter_asymptotics() {
    let mut ok = true;
    let mut detail = Vec::new();
    for n in [1u32, 3, 5] {
        let e = HEvaluator::new(GrowthFunction::power_one_plus(n).unwrap()).unwrap();
        let (slope, _) = asymptote::fit_h(&e, asymptote::WINDOW).unwrap();
        let target = 1.0 / (2.0 * n as f64 + 1.0);
        let rel = (slope - target).abs() / target;
        ok &= rel <= 0.02;
        detail.push(format!("n={n}: slope {slope:.5} vs {target:.5} ({:.1}%)", 100.0 * rel));
    }
    let (s1, s2, n) = (2.0, 0.5, 5u32);
    let e = HEvaluator::new(GrowthFunction::two_singular(s1, s2, n).unwrap()).unwrap();
    let q = 2.0 * n as f64 + 1.0;
    let target = s1.powf(2.0 / q) * s2.powf((2.0 * n as f64 - 2.0) / q);
    assert!((target - reference_asymptote(Asymptote::TwoSingularConstant { s1, s2, n })).abs() < 1e-15);
    let c = asymptote::fixed_slope_constant(&e, asymptote::WINDOW, 1.0 / q).unwrap();
    let rel = (c - target).abs() / target;
    ok &= rel <= 0.05;
    detail.push(format!("two-singular constant {c:.5} vs {target:.5} ({:.1}%)", 100.0 * rel));
    verdict(6, "fixed-parameter asymptotics on t in [1e-12, 1e-8]", ok, &detail.join("; "));
    assert!(ok);
}

#[test]
fn criterion_7_exponential_class_probe() {
    let ts = [1e-20, 1e-40, 1e-80];
    let ratios = asymptote::exp_class_ratios(1.0, 1.0, &ts).unwrap();
    let finite = ratios.iter().all(|q| q.is_finite());
    let monotone = ratios.windows(2).all(|w| w[1] < w[0]) || ratios.windows(2).all(|w| w[1] > w[0]);
    let report = asymptote::run(&Config::default()).unwrap();
    let rows: Vec<_> = report.rows_of("asym_exp_ratio").filter(|r| r.case_id == "exp_a1_alpha1").collect();
    let quoted = reference_asymptote(Asymptote::ExpClassHConstant { a: 1.0, alpha: 1.0 });
    let printed = rows.len() == 3
        && rows.iter().all(|r| (r.bound - quoted).abs() < 1e-12 && r.status != Status::Fail)
        && rows.iter().zip(&ratios).all(|(r, q)| r.measured == *q);
    let ok = finite && monotone && printed && (quoted + 2.0).abs() < 1e-12 && !report.has_failures();
    verdict(
        7,
        "exponential-class ratio down to t = 1e-80",
        ok,
        &format!("ratios {ratios:.5?} beside quoted {quoted}"),
    );
    assert!(ok);
}

#[test]
fn criterion_8_truncation_study() {
    let p = ExpClassParams::new(1.0, 1.0, 1.0).unwrap();
    let a = models::exp_class_matrix(&p, 40, 7).unwrap();
    let z = c64::new(1.5 * linalg::operator_norm(&a).unwrap(), 0.0);
    let rows = detbounds::truncation_study(&a, z, &[5, 10, 20, 40]).unwrap();
    let decreasing = rows.windows(2).all(|w| w[1].trace_gap < w[0].trace_gap);
    let last = rows[3];
    let harness_run = truncation::run(&Config { seed: 7, ..Config::default() }).unwrap();
    let ok = decreasing && last.det_gap <= 1e-10 && last.distance_gap <= 1e-10 && !harness_run.has_failures();
    let gaps: Vec<String> = rows.iter().map(|r| format!("{:.3e}", r.trace_gap)).collect();
    verdict(
        8,
        "Schmidt truncation of a 40x40 exponential-class matrix",
        ok,
        &format!("trace gaps {gaps:?}, det gap {:.1e}, distance gap {:.1e}", last.det_gap, last.distance_gap),
    );
    assert!(ok);
}

#[test]
fn criterion_9_reproducible_across_threads() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str| {
        let out = dir.path().join(format!("t{threads}"));
        let status = Command::new(env!("CARGO_BIN_EXE_specbound"))
            .args(["verify", "--threads", threads, "--out"])
            .arg(&out)
            .stderr(Stdio::null())
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
        std::fs::read(out.join("verify.csv")).unwrap()
    };
    let one = run("1");
    let four = run("4");
    let lines = one.iter().filter(|&&b| b == b'\n').count();
    let ok = one == four && lines > 1;
    verdict(9, "byte-identical verify CSV for 1 and 4 threads", ok, &format!("{lines} lines"));
    assert!(ok);
}

#[test]
fn every_command_runs_through_the_dispatcher() {
    let cfg = Config { trials: 1, dims: vec![3], ..Config::default() };
    for cmd in [harness::Command::Verify, harness::Command::Shift, harness::Command::Truncation] {
        assert_eq!(harness::run(cmd, &cfg, Some(1), false).unwrap().exit_code(), 0);
    }
}
