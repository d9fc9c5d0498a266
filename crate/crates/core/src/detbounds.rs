//! Perturbation determinants `det(I - A/z) = prod_k (1 - l_k(A)/z)` and the
//! two-sided estimates that drive the spectral-distance bounds:
//!
//! - lower: `|det(I - A/z)|^{-1} <= F_A(1 / d(z, s(A)))` for `z` in the
//!   resolvent set, `z != 0`;
//! - upper: for `z` an eigenvalue of `B` outside `s(A)`, with
//!   `d = d(z, s(A) ∪ {0})`,
//!   `|det(I - A/z)| <= (||A - B|| / d) prod_{k<n} (1 + s_k(A)/d)`,
//!   and its weaker form with the full product `F_A(1/d)`.
//!
//! All comparisons are made between logarithms.

use crate::error::{Error, Result};
use crate::growth::GrowthFunction;
use crate::linalg::{self, c64, ComplexMatrix, SingularProfile};
use crate::spectra::{self, SpectrumSet};

/// Points closer than this to the spectrum are not in the resolvent set for
/// the purposes of these checks.
pub const MIN_SPECTRAL_DISTANCE: f64 = 1e-8;

/// Eigenvalues of `B` smaller than this are treated as zero.
pub const MIN_EIGENVALUE_MODULUS: f64 = 1e-10;

/// A matrix with its spectrum and singular values computed once.
#[derive(Debug, Clone)]
pub struct Analyzed {
    pub matrix: ComplexMatrix,
    pub spectrum: SpectrumSet,
    pub singular: SingularProfile,
}

impl Analyzed {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let spectrum = linalg::eigenvalues(&matrix)?;
        let singular = linalg::singular_values(&matrix)?;
        Ok(Self { matrix, spectrum, singular })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn growth(&self) -> GrowthFunction {
        GrowthFunction::profile(self.singular.clone())
    }

    pub fn operator_norm(&self) -> f64 {
        self.singular.s(1)
    }

    pub fn trace_norm(&self) -> f64 {
        self.singular.total()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetBoundForm {
    /// `-log|det| <= log F_A(1/d)`.
    Lower,
    /// Upper bound with the `n - 1` leading singular values.
    UpperLeading,
    /// Upper bound with the full product `F_A(1/d)`.
    UpperFull,
}

impl DetBoundForm {
    pub fn name(self) -> &'static str {
        match self {
            Self::Lower => "det_lower",
            Self::UpperLeading => "det_upper_leading",
            Self::UpperFull => "det_upper_full",
        }
    }
}

/// One determinant inequality evaluated at one point, in log form:
/// the inequality reads `lhs <= rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetReport {
    pub form: DetBoundForm,
    pub z: c64,
    /// The distance used in the bound.
    pub distance: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

impl DetReport {
    fn new(form: DetBoundForm, z: c64, distance: f64, lhs: f64, rhs: f64) -> Self {
        Self { form, z, distance, lhs, rhs, slack: rhs - lhs }
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.slack >= -tol
    }
}

fn require_nonzero(z: c64) -> Result<()> {
    if z.norm() == 0.0 || !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidInput(format!("z must be finite and nonzero, got {z}")));
    }
    Ok(())
}

/// `prod_k (1 - l_k / z)` over a precomputed spectrum.
pub fn det_from_spectrum(spectrum: &SpectrumSet, z: c64) -> c64 {
    spectrum
        .points()
        .iter()
        .fold(c64::new(1.0, 0.0), |acc, l| acc * (c64::new(1.0, 0.0) - l / z))
}

/// `log |det(I - A/z)|` as a sum of logarithms of the factors.
pub fn log_abs_det_from_spectrum(spectrum: &SpectrumSet, z: c64) -> f64 {
    spectrum
        .points()
        .iter()
        .map(|l| (c64::new(1.0, 0.0) - l / z).norm().ln())
        .sum()
}

/// `det(I - A/z)` from the eigenvalues of `A`.
pub fn det_perturbation(a: &ComplexMatrix, z: c64) -> Result<c64> {
    require_nonzero(z)?;
    Ok(det_from_spectrum(&linalg::eigenvalues(a)?, z))
}

/// `det(I - A/z)` via LU of the matrix `I - A/z`; an independent route.
pub fn det_perturbation_lu(a: &ComplexMatrix, z: c64) -> Result<c64> {
    require_nonzero(z)?;
    let n = a.dim();
    let m = ComplexMatrix::from_fn(n, |i, j| {
        let id = if i == j { c64::new(1.0, 0.0) } else { c64::new(0.0, 0.0) };
        id - a.get(i, j) / z
    })?;
    Ok(m.determinant())
}

/// Lower-bound check at `z` using precomputed data for `A`.
pub fn lower_bound_check_analyzed(a: &Analyzed, z: c64) -> Result<DetReport> {
    require_nonzero(z)?;
    let d = spectra::point_distance(z, &a.spectrum);
    if d <= MIN_SPECTRAL_DISTANCE {
        return Err(Error::Precondition(format!(
            "z = {z} lies within {d:e} of the spectrum"
        )));
    }
    let lhs = -log_abs_det_from_spectrum(&a.spectrum, z);
    let rhs = a.growth().log_eval(-d.ln())?;
    Ok(DetReport::new(DetBoundForm::Lower, z, d, lhs, rhs))
}

pub fn lower_bound_check(a: &ComplexMatrix, z: c64) -> Result<DetReport> {
    lower_bound_check_analyzed(&Analyzed::new(a.clone())?, z)
}

/// Both upper-bound forms evaluated at one eigenvalue `z` of `B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperBoundPair {
    pub leading: DetReport,
    pub full: DetReport,
}

/// Upper-bound checks at every admissible eigenvalue of `B`: `|z|` above
/// [`MIN_EIGENVALUE_MODULUS`] and `d(z, s(A) ∪ {0})` above
/// [`MIN_SPECTRAL_DISTANCE`]. Repeated eigenvalues are checked once.
pub fn upper_bound_check_analyzed(
    a: &Analyzed,
    b: &Analyzed,
    diff_norm: f64,
) -> Result<Vec<UpperBoundPair>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let n = a.dim();
    let with_zero = spectra::adjoin_zero(&a.spectrum);
    let growth = a.growth();
    let mut seen: Vec<c64> = Vec::new();
    let mut out = Vec::new();
    for &z in b.spectrum.points() {
        if z.norm() <= MIN_EIGENVALUE_MODULUS || seen.contains(&z) {
            continue;
        }
        seen.push(z);
        let d = spectra::point_distance(z, &with_zero);
        if d <= MIN_SPECTRAL_DISTANCE {
            continue;
        }
        let lhs = log_abs_det_from_spectrum(&a.spectrum, z);
        let lead = diff_norm.ln() - d.ln();
        let partial: f64 = a.singular.values().iter().take(n - 1).map(|s| (s / d).ln_1p()).sum();
        let full = growth.log_eval(-d.ln())?;
        out.push(UpperBoundPair {
            leading: DetReport::new(DetBoundForm::UpperLeading, z, d, lhs, lead + partial),
            full: DetReport::new(DetBoundForm::UpperFull, z, d, lhs, lead + full),
        });
    }
    Ok(out)
}

pub fn upper_bound_check(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Vec<UpperBoundPair>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let diff = linalg::operator_norm(&a.try_sub(b)?)?;
    upper_bound_check_analyzed(&Analyzed::new(a.clone())?, &Analyzed::new(b.clone())?, diff)
}

/// `log|det(I - A)|`, `sum log(1 + s_k)` and `||A||_1`; the chain
/// `log|det(I - A)| <= sum log(1 + s_k) <= ||A||_1` always holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeterminantChain {
    pub log_abs_det: f64,
    pub log_singular_product: f64,
    pub trace_norm: f64,
}

pub fn determinant_chain(a: &Analyzed) -> DeterminantChain {
    DeterminantChain {
        log_abs_det: log_abs_det_from_spectrum(&a.spectrum, c64::new(1.0, 0.0)),
        log_singular_product: a.singular.values().iter().map(|s| s.ln_1p()).sum(),
        trace_norm: a.trace_norm(),
    }
}

/// One row of a Schmidt-truncation study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationRow {
    pub k: usize,
    /// `||A_k - A||_1`.
    pub trace_gap: f64,
    /// `|det(I - A_k/z) - det(I - A/z)|`.
    pub det_gap: f64,
    /// `|d(z, s(A_k)) - d(z, s(A))|`.
    pub distance_gap: f64,
}

/// Compare `A` with its rank-`k` Schmidt truncations `A_k` at the point `z`.
pub fn truncation_study(a: &ComplexMatrix, z: c64, ks: &[usize]) -> Result<Vec<TruncationRow>> {
    require_nonzero(z)?;
    let spectrum = linalg::eigenvalues(a)?;
    let d = spectra::point_distance(z, &spectrum);
    if d <= MIN_SPECTRAL_DISTANCE {
        return Err(Error::Precondition(format!("z = {z} is not in the resolvent set")));
    }
    let det = det_from_spectrum(&spectrum, z);
    ks.iter()
        .map(|&k| {
            let ak = linalg::schmidt_truncate(a, k)?;
            let sk = linalg::eigenvalues(&ak)?;
            Ok(TruncationRow {
                k,
                trace_gap: linalg::trace_norm(&ak.try_sub(a)?)?,
                det_gap: (det_from_spectrum(&sk, z) - det).norm(),
                distance_gap: (spectra::point_distance(z, &sk) - d).abs(),
            })
        })
        .collect()
}
