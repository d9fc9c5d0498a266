//! The map `F -> H_F` with `H_F(t) = 1 / G^{-1}(1/t)` and `G(r) = r F(r)^2`.
//!
//! `G` is inverted in log-log coordinates: an exponential search outward
//! from `log r = 0` brackets the root, then bisection refines it. `G` is only
//! known to be continuous and strictly increasing, so no derivatives are used.

use crate::error::{Error, Result};
use crate::growth::GrowthFunction;

pub const DEFAULT_REL_TOL: f64 = 1e-13;
pub const DEFAULT_MAX_ITER: usize = 300;

/// Bracket search gives up beyond `|log r| = BRACKET_LIMIT`.
pub const BRACKET_LIMIT: f64 = 1e4;

/// Evaluator for `H_F` over a fixed, non-degenerate growth function.
#[derive(Debug, Clone)]
pub struct HEvaluator {
    f: GrowthFunction,
    rel_tol: f64,
    max_iter: usize,
}

impl HEvaluator {
    pub fn new(f: GrowthFunction) -> Result<Self> {
        Self::with_params(f, DEFAULT_REL_TOL, DEFAULT_MAX_ITER)
    }

    pub fn with_params(f: GrowthFunction, rel_tol: f64, max_iter: usize) -> Result<Self> {
        if f.is_degenerate() {
            return Err(Error::DegenerateGrowth);
        }
        if !(rel_tol > 0.0 && rel_tol <= 1e-6) {
            return Err(Error::InvalidInput(format!(
                "rel_tol must lie in (0, 1e-6], got {rel_tol}"
            )));
        }
        if max_iter == 0 {
            return Err(Error::InvalidInput("max_iter must be positive".into()));
        }
        Ok(Self { f, rel_tol, max_iter })
    }

    pub fn growth(&self) -> &GrowthFunction {
        &self.f
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    /// `log G(e^log_r) = log r + 2 log F(r)`.
    pub fn log_tilde(&self, log_r: f64) -> Result<f64> {
        Ok(log_r + 2.0 * self.f.log_eval(log_r)?)
    }

    /// Solve `log G(e^x) = log_y` for `x`.
    pub fn log_tilde_inverse(&self, log_y: f64) -> Result<f64> {
        if !log_y.is_finite() {
            return Err(Error::Domain(format!("log y must be finite, got {log_y}")));
        }
        // absolute in log y, i.e. relative in y, down to a few ulps of log y
        let tol = self.rel_tol.max(4.0 * f64::EPSILON * log_y.abs());
        let g = |x: f64| -> Result<f64> { Ok(self.log_tilde(x)? - log_y) };

        let mut iters = 0usize;
        let g0 = g(0.0)?;
        iters += 1;
        if g0.abs() <= tol {
            return Ok(0.0);
        }
        // bracket [lo, hi] with g(lo) < 0 < g(hi)
        let upward = g0 < 0.0;
        let (mut lo, mut hi);
        let (g_lo, g_hi);
        let mut inner = 0.0;
        let mut g_inner = g0;
        let mut step = 1.0f64;
        loop {
            let outer = if upward { step.min(BRACKET_LIMIT) } else { -step.min(BRACKET_LIMIT) };
            let g_outer = g(outer)?;
            iters += 1;
            let crossed = if upward { g_outer >= 0.0 } else { g_outer <= 0.0 };
            if crossed {
                if upward {
                    (lo, g_lo, hi, g_hi) = (inner, g_inner, outer, g_outer);
                } else {
                    (lo, g_lo, hi, g_hi) = (outer, g_outer, inner, g_inner);
                }
                break;
            }
            if step >= BRACKET_LIMIT || iters >= self.max_iter {
                return Err(Error::Range(format!(
                    "no bracket for log y = {log_y} within |log r| <= {BRACKET_LIMIT}"
                )));
            }
            inner = outer;
            g_inner = g_outer;
            step *= 2.0;
        }

        let mut best = if g_lo.abs() < g_hi.abs() { (lo, g_lo) } else { (hi, g_hi) };
        while iters < self.max_iter && best.1.abs() > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let gm = g(mid)?;
            iters += 1;
            if gm.abs() < best.1.abs() {
                best = (mid, gm);
            }
            if gm < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(best.0)
    }

    /// `log H_F(e^log_t)`; `log_t = -inf` maps to `-inf`.
    pub fn log_h_eval(&self, log_t: f64) -> Result<f64> {
        if log_t.is_nan() || log_t == f64::INFINITY {
            return Err(Error::Domain(format!("log t must be < inf, got {log_t}")));
        }
        if log_t == f64::NEG_INFINITY {
            return Ok(f64::NEG_INFINITY);
        }
        Ok(-self.log_tilde_inverse(-log_t)?)
    }

    /// `H_F(t)` for `t >= 0`, with `H_F(0) = 0`.
    pub fn h_eval(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::Domain(format!("H_F argument must be finite and >= 0, got {t}")));
        }
        if t == 0.0 {
            return Ok(0.0);
        }
        Ok(self.log_h_eval(t.ln())?.exp())
    }
}
