//! Dense complex matrix primitives.
//!
//! Factorizations are delegated to `faer`; eigenvalues are computed after a
//! radix-2 diagonal balancing of the matrix, which is an exact similarity and
//! keeps graded matrices (such as weighted shifts with tiny weights) accurate.

use std::cmp::Ordering;
use std::fmt;

use faer::Mat;

use crate::error::{Error, Result};
use crate::spectra::SpectrumSet;

pub use faer::c64;

/// Singular values below this threshold are reported as exact zeros.
pub const SINGULAR_FLOOR: f64 = 1e-300;

/// A dense square complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: Mat<c64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        let rows: Vec<Vec<c64>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j)).collect())
            .collect();
        f.debug_struct("ComplexMatrix")
            .field("dim", &n)
            .field("rows", &rows)
            .finish()
    }
}

fn finite(z: c64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

impl ComplexMatrix {
    fn from_mat(inner: Mat<c64>) -> Result<Self> {
        if inner.nrows() == 0 || inner.nrows() != inner.ncols() {
            return Err(Error::InvalidInput(format!(
                "matrix must be square with dim >= 1, got {}x{}",
                inner.nrows(),
                inner.ncols()
            )));
        }
        let n = inner.nrows();
        for j in 0..n {
            for i in 0..n {
                if !finite(inner[(i, j)]) {
                    return Err(Error::InvalidInput(format!(
                        "non-finite entry at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { inner })
    }

    /// Build an `n x n` matrix entry by entry.
    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> c64) -> Result<Self> {
        Self::from_mat(Mat::from_fn(n, n, f))
    }

    /// Build from row-major rows; every row must have the same length as the
    /// number of rows.
    pub fn from_rows(rows: &[Vec<c64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::InvalidInput(format!(
                "row of length {} in a {n}-row matrix",
                bad.len()
            )));
        }
        Self::from_fn(n, |i, j| rows[i][j])
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<c64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| c64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn diagonal(diag: &[c64]) -> Result<Self> {
        Self::from_fn(diag.len(), |i, j| if i == j { diag[i] } else { c64::new(0.0, 0.0) })
    }

    pub fn real_diagonal(diag: &[f64]) -> Result<Self> {
        let d: Vec<c64> = diag.iter().map(|&x| c64::new(x, 0.0)).collect();
        Self::diagonal(&d)
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| c64::new(0.0, 0.0))
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| c64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> c64 {
        self.inner[(i, j)]
    }

    /// Borrow the underlying `faer` matrix.
    pub fn as_faer(&self) -> &Mat<c64> {
        &self.inner
    }

    pub fn is_zero(&self) -> bool {
        let n = self.dim();
        (0..n).all(|j| (0..n).all(|i| self.inner[(i, j)] == c64::new(0.0, 0.0)))
    }

    pub fn trace(&self) -> c64 {
        (0..self.dim()).map(|i| self.inner[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            inner: self.inner.adjoint().to_owned(),
        }
    }

    /// Determinant via partial-pivoting LU.
    pub fn determinant(&self) -> c64 {
        self.inner.determinant()
    }

    /// Multiply every entry by a complex scalar.
    pub fn scale(&self, c: c64) -> Result<Self> {
        let n = self.dim();
        Self::from_fn(n, |i, j| self.inner[(i, j)] * c)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Self::from_mat(&self.inner + &other.inner)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Self::from_mat(&self.inner - &other.inner)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Self::from_mat(&self.inner * &other.inner)
    }

    /// Largest entrywise difference in modulus.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_dim(other)?;
        let n = self.dim();
        let mut worst = 0.0f64;
        for j in 0..n {
            for i in 0..n {
                worst = worst.max((self.inner[(i, j)] - other.inner[(i, j)]).norm());
            }
        }
        Ok(worst)
    }
}

/// A nonincreasing sequence of nonnegative singular values, optionally
/// followed by an unlisted tail whose sum is bounded by `tail_sum`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularProfile {
    values: Vec<f64>,
    tail_sum: f64,
}

impl SingularProfile {
    pub fn new(values: Vec<f64>, tail_sum: f64) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidInput(
                "singular values must be finite and nonnegative".into(),
            ));
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(
                "singular values must be sorted nonincreasing".into(),
            ));
        }
        if !tail_sum.is_finite() || tail_sum < 0.0 {
            return Err(Error::InvalidInput(
                "tail sum must be finite and nonnegative".into(),
            ));
        }
        Ok(Self { values, tail_sum })
    }

    /// Exact profile (no tail), sorting the values first.
    pub fn from_unsorted(mut values: Vec<f64>) -> Result<Self> {
        values.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
        Self::new(values, 0.0)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tail_sum(&self) -> f64 {
        self.tail_sum
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.tail_sum == 0.0
    }

    /// The `k`-th singular value, 1-based; zero past the stored values.
    pub fn s(&self, k: usize) -> f64 {
        assert!(k >= 1, "singular values are indexed from 1");
        self.values.get(k - 1).copied().unwrap_or(0.0)
    }

    /// A profile identically zero (including its tail).
    pub fn is_zero(&self) -> bool {
        self.tail_sum == 0.0 && self.values.iter().all(|&v| v == 0.0)
    }

    /// Upper bound for the sum of all singular values.
    pub fn total(&self) -> f64 {
        self.values.iter().sum::<f64>() + self.tail_sum
    }

    /// Multiply every value (and the tail bound) by `m > 0`.
    pub fn scaled(&self, m: f64) -> Result<Self> {
        if !(m > 0.0 && m.is_finite()) {
            return Err(Error::InvalidInput(format!("scale must be positive, got {m}")));
        }
        Self::new(
            self.values.iter().map(|v| v * m).collect(),
            self.tail_sum * m,
        )
    }
}

fn clamp_singular(s: f64) -> f64 {
    if s < SINGULAR_FLOOR {
        0.0
    } else {
        s
    }
}

/// Radix-2 row/column balancing (Parlett-Reinsch). Scaling by powers of two
/// is exact, so the balanced matrix is exactly similar to the input.
fn balance(a: &mut Mat<c64>) {
    const RADIX: f64 = 2.0;
    let n = a.nrows();
    // the loop converges in a handful of sweeps; the cap only guards against
    // pathological oscillation.
    for _ in 0..200 {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].norm();
                    r += a[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut cc = c;
            let lo = r / RADIX;
            while cc < lo && f < 1e150 {
                f *= RADIX;
                cc *= RADIX * RADIX;
            }
            let hi = r * RADIX;
            while cc > hi && f > 1e-150 {
                f /= RADIX;
                cc /= RADIX * RADIX;
            }
            if c * f + r / f < 0.95 * s {
                converged = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// Canonical argument in `(-pi, pi]`.
pub(crate) fn canonical_arg(z: c64) -> f64 {
    let t = z.im.atan2(z.re);
    if t <= -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        t
    }
}

/// Order by nonincreasing modulus, ties by nondecreasing argument.
pub(crate) fn spectral_order(a: &c64, b: &c64) -> Ordering {
    b.norm()
        .partial_cmp(&a.norm())
        .unwrap_or(Ordering::Equal)
        .then_with(|| {
            canonical_arg(*a)
                .partial_cmp(&canonical_arg(*b))
                .unwrap_or(Ordering::Equal)
        })
}

/// All eigenvalues with algebraic multiplicity, sorted by nonincreasing
/// modulus and then by argument.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<SpectrumSet> {
    let mut a = m.inner.clone();
    balance(&mut a);
    let mut ev = a
        .eigenvalues()
        .map_err(|e| Error::Numerical(format!("eigenvalue iteration failed: {e:?}")))?;
    for z in ev.iter_mut() {
        if !finite(*z) {
            return Err(Error::Numerical("non-finite eigenvalue".into()));
        }
        // drop signed zeros so argument-based ordering is stable
        if z.re == 0.0 {
            z.re = 0.0;
        }
        if z.im == 0.0 {
            z.im = 0.0;
        }
    }
    ev.sort_by(spectral_order);
    SpectrumSet::new(ev)
}

/// Full singular value decomposition `M = U diag(s) V*`, with `s` sorted
/// nonincreasing and columns of `U`, `V` permuted to match.
struct SortedSvd {
    u: Mat<c64>,
    s: Vec<f64>,
    v: Mat<c64>,
}

fn sorted_svd(m: &ComplexMatrix) -> Result<SortedSvd> {
    let svd = m
        .inner
        .svd()
        .map_err(|e| Error::Numerical(format!("svd failed: {e:?}")))?;
    let n = m.dim();
    let raw: Vec<f64> = svd.S().column_vector().iter().map(|z| z.re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| raw[j].partial_cmp(&raw[i]).unwrap_or(Ordering::Equal));
    let u = Mat::from_fn(n, n, |i, k| svd.U()[(i, order[k])]);
    let v = Mat::from_fn(n, n, |i, k| svd.V()[(i, order[k])]);
    let s = order.iter().map(|&k| clamp_singular(raw[k].max(0.0))).collect();
    Ok(SortedSvd { u, s, v })
}

/// Exact singular-value profile of `m` (length `dim`, zero tail).
pub fn singular_values(m: &ComplexMatrix) -> Result<SingularProfile> {
    let mut s = m
        .inner
        .singular_values()
        .map_err(|e| Error::Numerical(format!("svd failed: {e:?}")))?;
    for v in s.iter_mut() {
        *v = clamp_singular(v.max(0.0));
    }
    SingularProfile::from_unsorted(s)
}

/// Spectral norm `s_1(m)`.
pub fn operator_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(m)?.s(1))
}

/// Trace norm, the sum of all singular values.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(m)?.total())
}

/// Best rank-`k` approximation: the first `k` terms of the Schmidt
/// (singular value) expansion of `m`.
pub fn schmidt_truncate(m: &ComplexMatrix, k: usize) -> Result<ComplexMatrix> {
    let n = m.dim();
    if k > n {
        return Err(Error::InvalidInput(format!(
            "truncation rank {k} exceeds dimension {n}"
        )));
    }
    if k == 0 {
        return ComplexMatrix::zeros(n);
    }
    let SortedSvd { u, s, v } = sorted_svd(m)?;
    ComplexMatrix::from_fn(n, |i, j| {
        (0..k)
            .map(|t| u[(i, t)] * v[(j, t)].conj() * s[t])
            .sum::<c64>()
    })
}
