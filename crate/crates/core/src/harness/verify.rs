//! The random-pair inequality suites.

use rayon::prelude::*;

use crate::bounds::{self, BoundReport, Corollary, Pair};
use crate::detbounds::{self, Analyzed, DetReport, MIN_EIGENVALUE_MODULUS, MIN_SPECTRAL_DISTANCE};
use crate::error::Result;
use crate::linalg::ComplexMatrix;
use crate::models;
use crate::spectra;
use crate::c64;

use super::config::Config;
use super::report::{Report, Row, Status};

/// Values of `r` for the shifted Weyl product inequality.
pub const WEYL_SHIFTS: [f64; 3] = [0.1, 1.0, 10.0];

/// Points on the circle `|z| = 2 ||A||` used for the lower determinant bound.
pub const CIRCLE_POINTS: usize = 8;

/// A corollary bound may undercut the main bound by this relative amount.
pub const DOMINANCE_REL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Case {
    pub dim: usize,
    pub trial: usize,
    pub delta_index: usize,
}

impl Case {
    /// Key feeding the per-trial RNG stream; independent of the delta index,
    /// so every perturbation size shares the same `A`.
    pub fn key(&self) -> u64 {
        ((self.dim as u64) << 32) | self.trial as u64
    }

    pub fn id(&self) -> String {
        format!("n{}_t{}_d{}", self.dim, self.trial, self.delta_index)
    }
}

pub fn cases(cfg: &Config) -> Vec<Case> {
    let mut out = Vec::with_capacity(cfg.dims.len() * cfg.trials * cfg.delta_grid.len());
    for &dim in &cfg.dims {
        for trial in 0..cfg.trials {
            for delta_index in 0..cfg.delta_grid.len() {
                out.push(Case { dim, trial, delta_index });
            }
        }
    }
    out
}

/// How a row's bound is weakened in self-test mode.
#[derive(Clone, Copy)]
enum Scale {
    Linear,
    Log,
}

struct Emitter<'a> {
    case_id: String,
    dim: usize,
    seed: u64,
    param: f64,
    inject: bool,
    rows: &'a mut Vec<Row>,
}

impl Emitter<'_> {
    fn bound(&self, bound: f64, scale: Scale) -> f64 {
        match (self.inject, scale) {
            (false, _) => bound,
            (true, Scale::Linear) => 0.5 * bound,
            (true, Scale::Log) => bound - std::f64::consts::LN_2,
        }
    }

    fn push(&mut self, suite: &str, measured: f64, bound: f64, slack: f64, status: Status) {
        self.rows.push(Row {
            suite: suite.to_string(),
            case_id: self.case_id.clone(),
            dim: self.dim,
            seed: self.seed,
            param: self.param,
            measured,
            bound,
            slack,
            status,
        });
    }

    /// `measured <= bound` with slack allowed down to `-tol`.
    fn upper(&mut self, suite: &str, measured: f64, bound: f64, scale: Scale, tol: f64) {
        let bound = self.bound(bound, scale);
        let slack = bound - measured;
        let status = if slack >= -tol { Status::Pass } else { Status::Fail };
        self.push(suite, measured, bound, slack, status);
    }

    /// `|measured - bound| <= tol`.
    fn equal(&mut self, suite: &str, measured: f64, bound: f64, scale: Scale, tol: f64) {
        let bound = self.bound(bound, scale);
        let slack = bound - measured;
        let status = if slack.abs() <= tol { Status::Pass } else { Status::Fail };
        self.push(suite, measured, bound, slack, status);
    }

    fn error(&mut self, suite: &str, err: &crate::Error) {
        self.case_id = format!("{}:{}", self.case_id, err.to_string().replace([',', '\n'], ";"));
        self.push(suite, f64::NAN, f64::NAN, f64::NAN, Status::Fail);
    }

    fn report(&mut self, r: &BoundReport, slack_tol: f64) {
        let tol = slack_tol * self.bound(r.bound_value, Scale::Linear).max(1.0);
        self.upper(&r.bound_name, r.measured_distance, r.bound_value, Scale::Linear, tol);
    }

    fn worst_det(&mut self, suite: &str, reports: &[DetReport], slack_tol: f64) {
        if let Some(r) = reports.iter().min_by(|x, y| x.slack.total_cmp(&y.slack)) {
            let tol = slack_tol * r.rhs.abs().max(1.0);
            self.upper(suite, r.lhs, r.rhs, Scale::Log, tol);
        }
    }
}

fn weyl_rows(e: &mut Emitter<'_>, label: &str, x: &Analyzed, rel: f64) {
    let lam = x.spectrum.moduli();
    let s = x.singular.values();

    // multiplicative: sum_{k<=m} log|l_k| <= sum_{k<=m} log s_k
    let mut worst: Option<(f64, f64)> = None;
    let (mut lhs, mut rhs) = (0.0, 0.0);
    for (l, sk) in lam.iter().zip(s) {
        lhs += l.ln();
        rhs += sk.ln();
        if lhs == f64::NEG_INFINITY {
            break;
        }
        if worst.is_none_or(|(a, b)| rhs - lhs < b - a) {
            worst = Some((lhs, rhs));
        }
    }
    if let Some((l, r)) = worst {
        e.upper(&format!("weyl_mult_{label}"), l, r, Scale::Log, rel * r.abs().max(1.0));
    }

    // additive: sum_{k<=m} |l_k| <= sum_{k<=m} s_k
    let mut worst = (0.0, 0.0, f64::INFINITY);
    let (mut lhs, mut rhs) = (0.0, 0.0);
    for (l, sk) in lam.iter().zip(s) {
        lhs += l;
        rhs += sk;
        if rhs - lhs < worst.2 {
            worst = (lhs, rhs, rhs - lhs);
        }
    }
    e.upper(&format!("weyl_add_{label}"), worst.0, worst.1, Scale::Linear, rel * worst.1.max(1.0));

    // shifted: prod_{k<=m} (1 + r|l_k|) <= prod_{k<=m} (1 + r s_k)
    let mut worst = (0.0, 0.0, f64::INFINITY);
    for r in WEYL_SHIFTS {
        let (mut lhs, mut rhs) = (0.0f64, 0.0f64);
        for (l, sk) in lam.iter().zip(s) {
            lhs += (r * l).ln_1p();
            rhs += (r * sk).ln_1p();
            if rhs - lhs < worst.2 {
                worst = (lhs, rhs, rhs - lhs);
            }
        }
    }
    e.upper(&format!("weyl_shifted_{label}"), worst.0, worst.1, Scale::Log, rel * worst.1.abs().max(1.0));

    // |det X| = prod s_k, via LU
    let log_det = x.matrix.determinant().norm().ln();
    let log_prod: f64 = s.iter().map(|v| v.ln()).sum();
    e.equal(&format!("det_product_{label}"), log_det, log_prod, Scale::Log, rel * log_prod.abs().max(1.0));
}

fn chain_rows(e: &mut Emitter<'_>, label: &str, x: &Analyzed, rel: f64) {
    let c = detbounds::determinant_chain(x);
    e.upper(
        &format!("det_chain_left_{label}"),
        c.log_abs_det,
        c.log_singular_product,
        Scale::Log,
        rel * c.log_singular_product.abs().max(1.0),
    );
    e.upper(
        &format!("det_chain_right_{label}"),
        c.log_singular_product,
        c.trace_norm,
        Scale::Log,
        rel * c.trace_norm.max(1.0),
    );
}

fn lower_points(p: &Pair) -> Vec<c64> {
    let mut zs: Vec<c64> = p.b.spectrum.points().to_vec();
    let radius = 2.0 * p.a.operator_norm();
    if radius > 0.0 {
        for j in 0..CIRCLE_POINTS {
            let theta = 0.1 + std::f64::consts::TAU * j as f64 / CIRCLE_POINTS as f64;
            zs.push(c64::from_polar(radius, theta));
        }
    }
    zs.retain(|&z| {
        z.norm() > MIN_EIGENVALUE_MODULUS && spectra::point_distance(z, &p.a.spectrum) > MIN_SPECTRAL_DISTANCE
    });
    zs
}

fn pair_rows(e: &mut Emitter<'_>, p: &Pair, cfg: &Config) -> Result<()> {
    let tol = cfg.tol.slack;

    let lower = lower_points(p)
        .into_iter()
        .map(|z| detbounds::lower_bound_check_analyzed(&p.a, z))
        .collect::<Result<Vec<_>>>()?;
    e.worst_det("det_lower", &lower, tol);

    let upper = detbounds::upper_bound_check_analyzed(&p.a, &p.b, p.diff_norm)?;
    let leading: Vec<DetReport> = upper.iter().map(|u| u.leading).collect();
    let full: Vec<DetReport> = upper.iter().map(|u| u.full).collect();
    e.worst_det("det_upper_leading", &leading, tol);
    e.worst_det("det_upper_full", &full, tol);

    e.report(&bounds::elsner_bound_pair(p), tol);
    if p.a.singular.is_zero() || p.b.singular.is_zero() {
        return Ok(());
    }
    let mut ab = bounds::directed_bound_pair(p)?;
    ab.bound_name = "directed_ab".into();
    e.report(&ab, tol);
    let reversed = Pair { a: p.b.clone(), b: p.a.clone(), diff_norm: p.diff_norm };
    let mut ba = bounds::directed_bound_pair(&reversed)?;
    ba.bound_name = "directed_ba".into();
    e.report(&ba, tol);

    let main = bounds::main_bound_pair(p)?;
    e.report(&main, tol);

    let corollaries = [
        bounds::corollary_bound_pair(Corollary::TraceNorm, p)?,
        bounds::corollary_bound_pair(Corollary::FiniteRank, p)?,
        bounds::corollary_bound_pair(Corollary::TwoSingular, p)?,
        bounds::exp_class_bound_with_fitted_gauge(p, cfg.exp_class.a, cfg.exp_class.alpha)?,
    ];
    for c in &corollaries {
        e.report(c, tol);
        e.upper(
            &format!("dominance_{}", c.bound_name),
            main.bound_value,
            c.bound_value,
            Scale::Linear,
            DOMINANCE_REL_TOL * c.bound_value,
        );
    }
    Ok(())
}

fn case_rows(cfg: &Config, case: Case, inject: bool) -> Vec<Row> {
    let seed = models::trial_seed(cfg.seed, case.key());
    let mut rows = Vec::new();
    let mut e = Emitter {
        case_id: case.id(),
        dim: case.dim,
        seed,
        param: cfg.delta_grid[case.delta_index],
        inject,
        rows: &mut rows,
    };
    let result = (|| -> Result<()> {
        let (a, b) = models::random_pair(case.dim, seed, e.param)?;
        let p = Pair::new(&a, &b)?;
        for (label, x) in [("a", &p.a), ("b", &p.b)] {
            weyl_rows(&mut e, label, x, cfg.tol.rel);
            chain_rows(&mut e, label, x, cfg.tol.rel);
        }
        pair_rows(&mut e, &p, cfg)
    })();
    if let Err(err) = result {
        e.error("error", &err);
    }
    rows
}

/// A 1x1 pair on which Elsner's bound is attained, so halving any bound is
/// guaranteed to produce a failure.
fn calibration_rows(inject: bool) -> Vec<Row> {
    let mut rows = Vec::new();
    let mut e = Emitter { case_id: "calibration".into(), dim: 1, seed: 0, param: 0.0, inject, rows: &mut rows };
    let pair = ComplexMatrix::real_diagonal(&[0.3])
        .and_then(|a| Ok((a, ComplexMatrix::real_diagonal(&[0.7])?)))
        .and_then(|(a, b)| Pair::new(&a, &b));
    match pair {
        Ok(p) => e.report(&bounds::elsner_bound_pair(&p), bounds::PASS_TOL),
        Err(err) => e.error("error", &err),
    }
    rows
}

/// Run every inequality suite. `threads = None` uses rayon's default pool
/// size; the rows are identical for every thread count. With `self_test`
/// every bound is halved (or lowered by `log 2`) and a calibration case is
/// added, so the run must fail.
pub fn run(cfg: &Config, threads: Option<usize>, self_test: bool) -> Result<Report> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| crate::Error::InvalidInput(format!("cannot build thread pool: {e}")))?;
    let all = cases(cfg);
    let chunks: Vec<Vec<Row>> = pool.install(|| all.par_iter().map(|&c| case_rows(cfg, c, self_test)).collect());

    let mut report = Report::new("verify");
    if self_test {
        report.rows.extend(calibration_rows(true));
    }
    report.rows.extend(chunks.into_iter().flatten());
    report.summary.insert("cases".into(), all.len() as f64);
    Ok(report)
}
