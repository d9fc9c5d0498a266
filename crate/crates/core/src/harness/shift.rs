//! Weighted-shift comparison: measured distance against Elsner, the
//! two-singular corollary and the main bound.

use crate::bounds::{self, reference_asymptote, Asymptote, Corollary, Pair};
use crate::error::Result;
use crate::models;

use super::config::Config;
use super::fit_line;
use super::report::{Report, Row, Status};

/// The eigensolver distance must match `eps^((n-1)/n)` to this relative accuracy.
pub const CLOSED_FORM_REL_TOL: f64 = 1e-6;
/// Fitted measured-distance slope against `(n-1)/n`.
pub const MEASURED_SLOPE_TOL: f64 = 1e-6;
/// Relative tolerance for the remaining slope comparisons.
pub const SLOPE_REL_TOL: f64 = 0.02;

fn row(suite: &str, case_id: String, n: usize, param: f64, measured: f64, bound: f64, status: Status) -> Row {
    Row {
        suite: suite.into(),
        case_id,
        dim: n,
        seed: 0,
        param,
        measured,
        bound,
        slack: bound - measured,
        status,
    }
}

fn pass_if(ok: bool, otherwise: Status) -> Status {
    if ok { Status::Pass } else { otherwise }
}

pub fn run(cfg: &Config) -> Result<Report> {
    let n = cfg.n_shift;
    let mut report = Report::new("shift");
    let (mut log_eps, mut measured, mut elsner, mut two, mut main) = (vec![], vec![], vec![], vec![], vec![]);

    for (i, &eps) in cfg.epsilon_grid.iter().enumerate() {
        let (a, b) = models::weighted_shift_pair(n, eps)?;
        let p = Pair::new(&a, &b)?;
        let d = p.zero_adjoined_distance();
        let closed = eps.powf((n as f64 - 1.0) / n as f64);
        let id = format!("eps{i}");
        report.rows.push(row(
            "shift_measured",
            id.clone(),
            n,
            eps,
            d,
            closed,
            pass_if((d - closed).abs() <= CLOSED_FORM_REL_TOL * closed, Status::Fail),
        ));
        let reports = [
            ("shift_elsner", bounds::elsner_bound_pair(&p)),
            ("shift_two_singular", bounds::corollary_bound_pair(Corollary::TwoSingular, &p)?),
            ("shift_main", bounds::main_bound_pair(&p)?),
        ];
        for (suite, r) in &reports {
            let ok = bounds::passes(r.bound_value - d, r.bound_value);
            report.rows.push(row(suite, id.clone(), n, eps, d, r.bound_value, pass_if(ok, Status::Fail)));
        }
        log_eps.push(eps.ln());
        measured.push(d.ln());
        elsner.push(reports[0].1.bound_value.ln());
        two.push(reports[1].1.bound_value.ln());
        main.push(reports[2].1.bound_value.ln());
    }

    if log_eps.len() >= 2 {
        let nn = n as u32;
        let direct = reference_asymptote(Asymptote::ShiftDirectBalanceExponent);
        let quoted = reference_asymptote(Asymptote::ShiftTwoSingularExponent { n: nn });
        let slopes = [
            ("measured", &measured, reference_asymptote(Asymptote::ShiftMeasuredExponent { n: nn }), Status::Fail),
            ("elsner", &elsner, reference_asymptote(Asymptote::ShiftElsnerExponent { n: nn }), Status::Fail),
            ("two_singular_vs_quoted", &two, quoted, Status::Warn),
            ("two_singular_vs_balance", &two, direct, Status::Warn),
            ("main_vs_balance", &main, direct, Status::Warn),
        ];
        for (name, ys, reference, on_miss) in slopes {
            let (slope, _) = fit_line(&log_eps, ys);
            let tol = if name == "measured" { MEASURED_SLOPE_TOL } else { SLOPE_REL_TOL * reference };
            let status = pass_if((slope - reference).abs() <= tol, on_miss);
            report.rows.push(row("shift_slope", name.into(), n, n as f64, slope, reference, status));
            report.summary.insert(format!("slope_{name}"), slope);
            report.summary.insert(format!("reference_{name}"), reference);
        }
    }
    Ok(report)
}
