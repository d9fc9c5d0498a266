//! Growth functions `F: [0, inf) -> [1, inf)`, strictly increasing and
//! unbounded, evaluated as `log F(e^t)`.
//!
//! Every function in the family satisfies `F(0) = 1`. Products over singular
//! values are summed as `log1p` terms, so arguments from `1e-300` up to
//! `e^700` and beyond stay finite. Where a product is truncated (a profile
//! with a tail certificate, or the infinite exponential-class product) the
//! neglected factors are bounded via `log(1 + x) <= x`; [`GrowthFunction::log_eval`]
//! returns the resulting upper value, which keeps every downstream spectral
//! bound valid.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, SingularProfile};

/// Exponential-class products are truncated once `r exp(-a k^alpha)` drops
/// below this.
pub const EXP_CLASS_THRESHOLD: f64 = 1e-18;

/// Hard cap on explicitly summed exponential-class terms.
pub const EXP_CLASS_MAX_TERMS: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Profile(SingularProfile),
    ExpLinear,
    ExpClass { a: f64, alpha: f64 },
    PowerOnePlus { n: u32 },
    TwoSingular { s1: f64, s2: f64, n: u32 },
    Scaled { inner: Box<GrowthFunction>, m: f64 },
    Max(Box<GrowthFunction>, Box<GrowthFunction>),
}

/// A member of the growth-function family.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthFunction {
    kind: Kind,
}

/// Two-sided value of `log F(r)`: `lower` omits the truncated tail, `upper`
/// adds a certified bound for it. Both agree when nothing was truncated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub lower: f64,
    pub upper: f64,
}

impl LogValue {
    fn exact(v: f64) -> Self {
        Self { lower: v, upper: v }
    }
}

/// `log(1 + r s)` given `log r`, accurate across the whole range.
fn log1p_scaled(log_r: f64, s: f64) -> f64 {
    if s == 0.0 || log_r == f64::NEG_INFINITY {
        return 0.0;
    }
    let u = log_r + s.ln();
    if u < -36.0 {
        // log1p(x) = x (1 - x/2 + ...), relative error below 1e-16
        return u.exp();
    }
    if u > 36.0 {
        return u + (-u).exp();
    }
    let r = log_r.exp();
    let x = r * s;
    if r.is_finite() && r > 0.0 && x.is_finite() {
        x.ln_1p()
    } else {
        u.exp().ln_1p()
    }
}

/// `log(1 + e^u)`.
fn softplus(u: f64) -> f64 {
    if u < -36.0 {
        u.exp()
    } else if u > 36.0 {
        u + (-u).exp()
    } else {
        u.exp().ln_1p()
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} must be positive and finite, got {v}")))
    }
}

impl GrowthFunction {
    /// `prod_k (1 + r s_k)` over a singular-value profile.
    pub fn profile(p: SingularProfile) -> Self {
        Self { kind: Kind::Profile(p) }
    }

    /// `exp(r)`.
    pub fn exp_linear() -> Self {
        Self { kind: Kind::ExpLinear }
    }

    /// `prod_{k>=1} (1 + r exp(-a k^alpha))`.
    pub fn exp_class(a: f64, alpha: f64) -> Result<Self> {
        positive("a", a)?;
        positive("alpha", alpha)?;
        Ok(Self { kind: Kind::ExpClass { a, alpha } })
    }

    /// `(1 + r)^n`.
    pub fn power_one_plus(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("exponent n must be >= 1".into()));
        }
        Ok(Self { kind: Kind::PowerOnePlus { n } })
    }

    /// `(1 + r s1)(1 + r s2)^(n-1)`.
    ///
    /// `s2 = 0` is accepted (the matrices then have rank at most one).
    pub fn two_singular(s1: f64, s2: f64, n: u32) -> Result<Self> {
        positive("s1", s1)?;
        if !(s2 >= 0.0 && s2.is_finite()) {
            return Err(Error::InvalidInput(format!("s2 must be nonnegative, got {s2}")));
        }
        if n == 0 {
            return Err(Error::InvalidInput("dimension n must be >= 1".into()));
        }
        Ok(Self { kind: Kind::TwoSingular { s1, s2, n } })
    }

    /// `F_M`, built from the singular values of `m`.
    pub fn from_matrix(m: &ComplexMatrix) -> Result<Self> {
        Ok(Self::profile(linalg::singular_values(m)?))
    }

    /// `r -> F(m r)`.
    pub fn scale(&self, m: f64) -> Result<Self> {
        positive("scale m", m)?;
        Ok(Self {
            kind: Kind::Scaled { inner: Box::new(self.clone()), m },
        })
    }

    /// Constant 1: not a strictly increasing function.
    pub fn is_degenerate(&self) -> bool {
        match &self.kind {
            Kind::Profile(p) => p.is_zero(),
            Kind::Scaled { inner, .. } => inner.is_degenerate(),
            Kind::Max(l, r) => l.is_degenerate() && r.is_degenerate(),
            _ => false,
        }
    }

    /// `log F(e^log_r)`, upper value (see [`LogValue`]).
    pub fn log_eval(&self, log_r: f64) -> Result<f64> {
        Ok(self.log_eval_bounds(log_r)?.upper)
    }

    /// Lower and upper values of `log F(e^log_r)`.
    pub fn log_eval_bounds(&self, log_r: f64) -> Result<LogValue> {
        self.log_eval_with_threshold(log_r, EXP_CLASS_THRESHOLD)
    }

    /// As [`log_eval_bounds`](Self::log_eval_bounds) with an explicit
    /// exponential-class truncation threshold.
    pub fn log_eval_with_threshold(&self, log_r: f64, threshold: f64) -> Result<LogValue> {
        if log_r.is_nan() {
            return Err(Error::Domain("log r is NaN".into()));
        }
        if log_r == f64::INFINITY {
            if self.is_degenerate() {
                return Err(Error::Domain(
                    "degenerate growth function evaluated at r = inf".into(),
                ));
            }
            return Ok(LogValue::exact(f64::INFINITY));
        }
        if log_r == f64::NEG_INFINITY {
            return Ok(LogValue::exact(0.0));
        }
        match &self.kind {
            Kind::Profile(p) => {
                let body: f64 = p.values().iter().map(|&s| log1p_scaled(log_r, s)).sum();
                let tail = if p.tail_sum() > 0.0 {
                    (log_r + p.tail_sum().ln()).exp()
                } else {
                    0.0
                };
                Ok(LogValue { lower: body, upper: body + tail })
            }
            Kind::ExpLinear => Ok(LogValue::exact(log_r.exp())),
            Kind::ExpClass { a, alpha } => exp_class_log(log_r, *a, *alpha, threshold),
            Kind::PowerOnePlus { n } => Ok(LogValue::exact(*n as f64 * log1p_scaled(log_r, 1.0))),
            Kind::TwoSingular { s1, s2, n } => Ok(LogValue::exact(
                log1p_scaled(log_r, *s1) + (*n as f64 - 1.0) * log1p_scaled(log_r, *s2),
            )),
            Kind::Scaled { inner, m } => inner.log_eval_with_threshold(log_r + m.ln(), threshold),
            Kind::Max(l, r) => {
                let a = l.log_eval_with_threshold(log_r, threshold)?;
                let b = r.log_eval_with_threshold(log_r, threshold)?;
                Ok(LogValue {
                    lower: a.lower.max(b.lower),
                    upper: a.upper.max(b.upper),
                })
            }
        }
    }

    /// `F(r)` directly; overflows to `inf` for large arguments.
    pub fn eval(&self, r: f64) -> Result<f64> {
        if r < 0.0 {
            return Err(Error::Domain(format!("growth function argument {r} < 0")));
        }
        Ok(self.log_eval(r.ln())?.exp())
    }

    /// Short identifier used in reports.
    pub fn name(&self) -> String {
        match &self.kind {
            Kind::Profile(p) => format!("profile[{}]", p.len()),
            Kind::ExpLinear => "exp".into(),
            Kind::ExpClass { a, alpha } => format!("exp_class(a={a},alpha={alpha})"),
            Kind::PowerOnePlus { n } => format!("(1+r)^{n}"),
            Kind::TwoSingular { s1, s2, n } => format!("two_singular(s1={s1},s2={s2},n={n})"),
            Kind::Scaled { inner, m } => format!("{}o(m={m})", inner.name()),
            Kind::Max(l, r) => format!("max({},{})", l.name(), r.name()),
        }
    }
}

impl fmt::Display for GrowthFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Pointwise maximum `r -> max(F1(r), F2(r))`.
pub fn combine_max(f1: &GrowthFunction, f2: &GrowthFunction) -> GrowthFunction {
    GrowthFunction {
        kind: Kind::Max(Box::new(f1.clone()), Box::new(f2.clone())),
    }
}

/// Upper bound for `log Gamma(s, x)`, valid when `s <= 1` or `x > s - 1`.
fn log_upper_incomplete_gamma_bound(s: f64, x: f64) -> Option<f64> {
    let base = (s - 1.0) * x.ln() - x;
    if s <= 1.0 {
        Some(base)
    } else if x > s - 1.0 {
        Some(base + (x / (x - s + 1.0)).ln())
    } else {
        None
    }
}

fn exp_class_log(log_r: f64, a: f64, alpha: f64, threshold: f64) -> Result<LogValue> {
    let log_thr = threshold.ln();
    let s = 1.0 / alpha;
    let mut body = 0.0;
    let mut k = 1usize;
    loop {
        let x = a * (k as f64).powf(alpha);
        let u = log_r - x;
        // the integral tail bound is only usable once x > s - 1
        if u < log_thr && (s <= 1.0 || x > s) {
            // sum_{j>=k} r e^{-a j^alpha} <= r e^{-x} + r/(alpha a^s) Gamma(s, x)
            let log_gamma = log_upper_incomplete_gamma_bound(s, x)
                .expect("tail bound precondition checked above");
            let log_integral = log_r - alpha.ln() - s * a.ln() + log_gamma;
            let tail = u.exp() + log_integral.exp();
            return Ok(LogValue { lower: body, upper: body + tail });
        }
        body += softplus(u);
        k += 1;
        if k > EXP_CLASS_MAX_TERMS {
            return Err(Error::Range(format!(
                "exponential-class product needs more than {EXP_CLASS_MAX_TERMS} terms \
                 (a={a}, alpha={alpha}, log r={log_r})"
            )));
        }
    }
}
