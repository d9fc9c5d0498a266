//! Schmidt truncation of an exponential-class instance.

use crate::detbounds;
use crate::error::Result;
use crate::linalg;
use crate::models;
use crate::c64;

use super::config::Config;
use super::report::{Report, Row, Status};

pub const TRUNCATION_DIM: usize = 40;
pub const TRUNCATION_RANKS: [usize; 4] = [5, 10, 20, 40];
/// Gaps at full rank must fall below this.
pub const CONVERGENCE_TOL: f64 = 1e-8;

pub fn run(cfg: &Config) -> Result<Report> {
    let n = TRUNCATION_DIM;
    let a = models::exp_class_matrix(&cfg.exp_class, n, cfg.seed)?;
    // outside the disk of radius ||A||, so well inside the resolvent set
    let z = c64::new(1.5 * linalg::operator_norm(&a)?, 0.0);
    let study = detbounds::truncation_study(&a, z, &TRUNCATION_RANKS)?;

    let mut report = Report::new("truncation");
    let mut push = |suite: &str, k: usize, measured: f64, bound: f64, status: Status| {
        report.rows.push(Row {
            suite: suite.into(),
            case_id: format!("k{k}"),
            dim: n,
            seed: cfg.seed,
            param: k as f64,
            measured,
            bound,
            slack: bound - measured,
            status,
        });
    };
    for (i, r) in study.iter().enumerate() {
        // each trace gap must be strictly below its predecessor
        let prev = if i == 0 { f64::INFINITY } else { study[i - 1].trace_gap };
        let decreasing = r.trace_gap < prev;
        push("trunc_trace_gap", r.k, r.trace_gap, prev, if decreasing { Status::Pass } else { Status::Fail });
        let final_rank = r.k == n;
        for (suite, gap) in [("trunc_det_gap", r.det_gap), ("trunc_distance_gap", r.distance_gap)] {
            let status = if !final_rank || gap <= CONVERGENCE_TOL { Status::Pass } else { Status::Fail };
            let bound = if final_rank { CONVERGENCE_TOL } else { f64::INFINITY };
            push(suite, r.k, gap, bound, status);
        }
    }
    report.summary.insert("z".into(), z.re);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_instance_converges() {
        let cfg = Config { seed: 7, ..Config::default() };
        let r = run(&cfg).unwrap();
        assert_eq!(r.rows.len(), 12);
        assert_eq!(r.exit_code(), 0, "{}", r.to_csv());
        let gaps: Vec<f64> = r.rows_of("trunc_trace_gap").map(|r| r.measured).collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]));
        assert!(gaps[3] < 1e-10);
    }
}
