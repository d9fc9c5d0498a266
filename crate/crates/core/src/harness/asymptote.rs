//! Small-`t` behaviour of `H` for the closed-form growth families.
//!
//! Every comparison here is against a quoted asymptotic value, so mismatches
//! are reported as WARN; only evaluation errors are failures.

use crate::bounds::{reference_asymptote, Asymptote};
use crate::error::Result;
use crate::growth::GrowthFunction;
use crate::hmap::HEvaluator;

use super::config::Config;
use super::fit_line;
use super::report::{Report, Row, Status};

/// `log10 t` range of the fitting window and of a much deeper one.
pub const WINDOW: (f64, f64) = (-12.0, -8.0);
pub const DEEP_WINDOW: (f64, f64) = (-80.0, -60.0);
pub const GRID_POINTS: usize = 9;

pub const POWER_DIMS: [u32; 3] = [1, 3, 5];
pub const TWO_SINGULAR: (f64, f64, u32) = (2.0, 0.5, 5);
pub const EXP_CLASS_T: [f64; 3] = [1e-20, 1e-40, 1e-80];
pub const EXP_CLASS_LOG_R: [f64; 3] = [50.0, 100.0, 200.0];

pub const SLOPE_REL_TOL: f64 = 0.02;
pub const CONSTANT_REL_TOL: f64 = 0.05;

/// Leading constant of `log G^E(r) ~ c (log r)^(1 + 1/alpha)` obtained by
/// counting the factors with `r exp(-a k^alpha) > 1`.
pub fn balance_growth_constant(a: f64, alpha: f64) -> f64 {
    a.powf(-1.0 / alpha) * alpha / (1.0 + alpha)
}

/// Leading constant of `log H_{G^E}(t) ~ C |log t|^(alpha/(1+alpha))` implied
/// by [`balance_growth_constant`] through `2 log G^E(r) ~ |log t|`.
pub fn balance_h_constant(a: f64, alpha: f64) -> f64 {
    -(2.0 * balance_growth_constant(a, alpha)).powf(-alpha / (1.0 + alpha))
}

pub fn log_grid(window: (f64, f64), points: usize) -> Vec<f64> {
    let step = (window.1 - window.0) / (points - 1) as f64;
    (0..points).map(|i| (window.0 + step * i as f64) * std::f64::consts::LN_10).collect()
}

fn close(x: f64, reference: f64, rel: f64) -> Status {
    if (x - reference).abs() <= rel * reference.abs() { Status::Pass } else { Status::Warn }
}

struct Rows<'a> {
    report: &'a mut Report,
}

impl Rows<'_> {
    fn push(&mut self, suite: &str, case_id: String, param: f64, measured: f64, bound: f64, status: Status) {
        self.report.rows.push(Row {
            suite: suite.into(),
            case_id,
            dim: 0,
            seed: 0,
            param,
            measured,
            bound,
            slack: bound - measured,
            status,
        });
    }

    fn fail(&mut self, suite: &str, case_id: String, param: f64, err: &crate::Error) {
        let id = format!("{case_id}:{}", err.to_string().replace([',', '\n'], ";"));
        self.push(suite, id, param, f64::NAN, f64::NAN, Status::Fail);
    }
}

/// Fitted `(slope, intercept)` of `log H` against `log t` on a window.
pub fn fit_h(e: &HEvaluator, window: (f64, f64)) -> Result<(f64, f64)> {
    let xs = log_grid(window, GRID_POINTS);
    let ys = xs.iter().map(|&x| e.log_h_eval(x)).collect::<Result<Vec<_>>>()?;
    Ok(fit_line(&xs, &ys))
}

/// `exp(mean(log H - p log t))`: the constant of a fit with the slope fixed to `p`.
pub fn fixed_slope_constant(e: &HEvaluator, window: (f64, f64), p: f64) -> Result<f64> {
    let xs = log_grid(window, GRID_POINTS);
    let mut acc = 0.0;
    for &x in &xs {
        acc += e.log_h_eval(x)? - p * x;
    }
    Ok((acc / xs.len() as f64).exp())
}

/// `log H(t) / |log t|^(alpha/(1+alpha))` at each `t`.
pub fn exp_class_ratios(a: f64, alpha: f64, ts: &[f64]) -> Result<Vec<f64>> {
    let e = HEvaluator::new(GrowthFunction::exp_class(a, alpha)?)?;
    let p = reference_asymptote(Asymptote::ExpClassHExponent { alpha });
    ts.iter().map(|&t| Ok(e.log_h_eval(t.ln())? / t.ln().abs().powf(p))).collect()
}

fn windows() -> [(&'static str, (f64, f64)); 2] {
    [("window", WINDOW), ("deep", DEEP_WINDOW)]
}

fn slope_rows(rows: &mut Rows<'_>, name: &str, f: Result<GrowthFunction>, slope_ref: f64, constant_ref: Option<f64>) {
    let e = match f.and_then(HEvaluator::new) {
        Ok(e) => e,
        Err(err) => return rows.fail("asym_slope", name.into(), 0.0, &err),
    };
    for (label, w) in windows() {
        let id = format!("{name}_{label}");
        match fit_h(&e, w) {
            Ok((slope, _)) => {
                rows.push("asym_slope", id.clone(), w.0, slope, slope_ref, close(slope, slope_ref, SLOPE_REL_TOL));
                rows.report.summary.insert(format!("slope_{id}"), slope);
            }
            Err(err) => rows.fail("asym_slope", id.clone(), w.0, &err),
        }
        if let Some(c_ref) = constant_ref {
            match fixed_slope_constant(&e, w, slope_ref) {
                Ok(c) => {
                    rows.push("asym_constant", id.clone(), w.0, c, c_ref, close(c, c_ref, CONSTANT_REL_TOL));
                    rows.report.summary.insert(format!("constant_{id}"), c);
                }
                Err(err) => rows.fail("asym_constant", id, w.0, &err),
            }
        }
    }
}

fn exp_class_rows(rows: &mut Rows<'_>, a: f64, alpha: f64) {
    let name = format!("exp_a{a}_alpha{alpha}");
    let quoted = reference_asymptote(Asymptote::ExpClassHConstant { a, alpha });
    rows.report.summary.insert(format!("quoted_h_constant_{name}"), quoted);
    rows.report.summary.insert(format!("balance_h_constant_{name}"), balance_h_constant(a, alpha));
    match exp_class_ratios(a, alpha, &EXP_CLASS_T) {
        Ok(ratios) => {
            for (&t, &q) in EXP_CLASS_T.iter().zip(&ratios) {
                rows.push("asym_exp_ratio", name.clone(), t, q, quoted, close(q, quoted, CONSTANT_REL_TOL));
                rows.report.summary.insert(format!("ratio_{name}_t{t:e}"), q);
            }
            let up = ratios.windows(2).all(|w| w[1] > w[0]);
            let down = ratios.windows(2).all(|w| w[1] < w[0]);
            let status = if up || down { Status::Pass } else { Status::Warn };
            let spread = ratios[ratios.len() - 1] - ratios[0];
            rows.push("asym_exp_ratio_monotone", name.clone(), 0.0, spread, 0.0, status);
        }
        Err(err) => rows.fail("asym_exp_ratio", name.clone(), 0.0, &err),
    }

    let quoted_growth = reference_asymptote(Asymptote::ExpClassGrowthConstant { a, alpha });
    rows.report.summary.insert(format!("quoted_growth_constant_{name}"), quoted_growth);
    let f = match GrowthFunction::exp_class(a, alpha) {
        Ok(f) => f,
        Err(err) => return rows.fail("asym_exp_growth", name, 0.0, &err),
    };
    for log_r in EXP_CLASS_LOG_R {
        match f.log_eval(log_r) {
            Ok(v) => {
                let c = v / log_r.powf(1.0 + 1.0 / alpha);
                rows.push("asym_exp_growth", name.clone(), log_r, c, quoted_growth, close(c, quoted_growth, CONSTANT_REL_TOL));
            }
            Err(err) => rows.fail("asym_exp_growth", name.clone(), log_r, &err),
        }
    }
}

pub fn run(cfg: &Config) -> Result<Report> {
    let mut report = Report::new("asymptote");
    let mut rows = Rows { report: &mut report };
    for n in POWER_DIMS {
        let p = reference_asymptote(Asymptote::HPowerExponent { n });
        slope_rows(&mut rows, &format!("power_n{n}"), GrowthFunction::power_one_plus(n), p, None);
    }
    let (s1, s2, n) = TWO_SINGULAR;
    slope_rows(
        &mut rows,
        &format!("two_singular_n{n}"),
        GrowthFunction::two_singular(s1, s2, n),
        reference_asymptote(Asymptote::HPowerExponent { n }),
        Some(reference_asymptote(Asymptote::TwoSingularConstant { s1, s2, n })),
    );
    let mut families = vec![(1.0, 1.0)];
    if (cfg.exp_class.a, cfg.exp_class.alpha) != (1.0, 1.0) {
        families.push((cfg.exp_class.a, cfg.exp_class.alpha));
    }
    for (a, alpha) in families {
        exp_class_rows(&mut rows, a, alpha);
    }
    Ok(report)
}
