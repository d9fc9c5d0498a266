//! Test-instance generators.
//!
//! Random instances draw from `ChaCha20Rng` seeded with an explicit `u64`,
//! so every matrix is a pure function of its arguments. Per-trial seeds are
//! derived with [`trial_seed`].

use faer::Mat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c64, ComplexMatrix, SingularProfile};

/// Stretched-exponential singular-value envelope `s_k <= m exp(-a k^alpha)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpClassParams {
    pub a: f64,
    pub alpha: f64,
    pub m: f64,
}

impl ExpClassParams {
    pub fn new(a: f64, alpha: f64, m: f64) -> Result<Self> {
        let p = Self { a, alpha, m };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("a", self.a), ("alpha", self.alpha), ("m", self.m)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "exp-class parameter {name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// `m exp(-a k^alpha)` for `k = 1..=n`.
    pub fn envelope(&self, n: usize) -> Vec<f64> {
        (1..=n)
            .map(|k| self.m * (-self.a * (k as f64).powf(self.alpha)).exp())
            .collect()
    }
}

/// Seed for trial `index` of a run seeded with `seed`.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    seed ^ index
}

/// The weighted shift pair:
/// `A e_1 = e_2`, `A e_k = eps e_{k+1}` for `1 < k < n`, `A e_n = 0`, and `B`
/// equal to `A` except `B e_n = eps e_1`.
pub fn weighted_shift_pair(n: usize, eps: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("shift dimension must be >= 2, got {n}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidInput(format!("eps must lie in (0, 1), got {eps}")));
    }
    let entry = |i: usize, j: usize| -> f64 {
        if j == 0 && i == 1 {
            1.0
        } else if j >= 1 && j + 1 < n && i == j + 1 {
            eps
        } else {
            0.0
        }
    };
    let a = ComplexMatrix::from_fn(n, |i, j| c64::new(entry(i, j), 0.0))?;
    let b = ComplexMatrix::from_fn(n, |i, j| {
        let corner = if i == 0 && j == n - 1 { eps } else { 0.0 };
        c64::new(entry(i, j) + corner, 0.0)
    })?;
    Ok((a, b))
}

fn disk_sample(rng: &mut ChaCha20Rng) -> c64 {
    let r = rng.random::<f64>().sqrt();
    let theta = std::f64::consts::TAU * rng.random::<f64>();
    c64::new(r * theta.cos(), r * theta.sin())
}

fn disk_matrix(n: usize, rng: &mut ChaCha20Rng) -> Result<ComplexMatrix> {
    let scale = 1.0 / (n as f64).sqrt();
    // fill row-major so the stream order does not depend on storage layout
    let mut entries = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        entries.push(disk_sample(rng) * scale);
    }
    ComplexMatrix::from_fn(n, |i, j| entries[i * n + j])
}

/// `A` with i.i.d. entries uniform in the unit disk scaled by `1/sqrt(n)`,
/// and `B = A + delta P` with `P` an independent draw normalized to
/// `||P|| = 1`.
pub fn random_pair(n: usize, seed: u64, delta: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be >= 1".into()));
    }
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(Error::InvalidInput(format!("delta must be finite and >= 0, got {delta}")));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let a = disk_matrix(n, &mut rng)?;
    let p = disk_matrix(n, &mut rng)?;
    let norm = linalg::operator_norm(&p)?;
    if norm == 0.0 {
        return Err(Error::Numerical("perturbation direction is zero".into()));
    }
    let b = ComplexMatrix::from_fn(n, |i, j| a.get(i, j) + p.get(i, j) * (delta / norm))?;
    Ok((a, b))
}

/// Haar-like random unitary: QR of a complex Gaussian matrix, with the
/// columns of `Q` rotated so that `R` has a positive real diagonal.
fn random_unitary(n: usize, rng: &mut ChaCha20Rng) -> Mat<c64> {
    let mut entries = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        entries.push(c64::new(re, im));
    }
    let g = Mat::from_fn(n, n, |i, j| entries[i * n + j]);
    let qr = g.qr();
    let q = qr.compute_Q();
    let r = qr.R();
    Mat::from_fn(n, n, |i, j| {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c64::new(1.0, 0.0) };
        q[(i, j)] * phase
    })
}

/// `U D V*` with `D = diag(m exp(-a k^alpha))` and seeded random unitaries.
pub fn exp_class_matrix(p: &ExpClassParams, n: usize, seed: u64) -> Result<ComplexMatrix> {
    p.validate()?;
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be >= 1".into()));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let u = random_unitary(n, &mut rng);
    let v = random_unitary(n, &mut rng);
    let d = p.envelope(n);
    ComplexMatrix::from_fn(n, |i, j| {
        (0..n).map(|k| u[(i, k)] * v[(j, k)].conj() * d[k]).sum::<c64>()
    })
}

/// `max_k s_k exp(a k^alpha)` over a profile.
pub fn gauge_of_profile(s: &SingularProfile, a: f64, alpha: f64) -> Result<f64> {
    if !(a > 0.0 && alpha > 0.0) {
        return Err(Error::InvalidInput(format!("gauge needs a, alpha > 0, got ({a}, {alpha})")));
    }
    if !s.is_exact() {
        return Err(Error::InvalidInput("gauge needs an exact profile".into()));
    }
    Ok(s.values()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0.0)
        .map(|(i, &v)| (v.ln() + a * ((i + 1) as f64).powf(alpha)).exp())
        .fold(0.0, f64::max))
}

/// The `(a, alpha)`-gauge of a matrix.
pub fn gauge(m: &ComplexMatrix, a: f64, alpha: f64) -> Result<f64> {
    gauge_of_profile(&linalg::singular_values(m)?, a, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra;

    #[test]
    fn shift_pair_n2() {
        let (a, b) = weighted_shift_pair(2, 0.3).unwrap();
        let want_a = ComplexMatrix::from_real_rows(&[vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let want_b = ComplexMatrix::from_real_rows(&[vec![0.0, 0.3], vec![1.0, 0.0]]).unwrap();
        assert_eq!(a, want_a);
        assert_eq!(b, want_b);
    }

    #[test]
    fn shift_pair_identities() {
        for n in [2, 3, 4, 6, 9] {
            for eps in [0.5, 1e-2, 1e-5] {
                let (a, b) = weighted_shift_pair(n, eps).unwrap();
                let d = linalg::operator_norm(&a.try_sub(&b).unwrap()).unwrap();
                assert!((d - eps).abs() < 1e-15);
                let sa = linalg::singular_values(&a).unwrap();
                let sb = linalg::singular_values(&b).unwrap();
                assert!((sa.s(1) - 1.0).abs() < 1e-14 && (sb.s(1) - 1.0).abs() < 1e-14);
                assert!((sb.s(2) - eps).abs() < 1e-14 * eps.max(1e-300) + 1e-16);
                assert!(sa.s(2) <= sb.s(2) + 1e-16);
                let ev = linalg::eigenvalues(&a).unwrap();
                assert!(ev.points().iter().all(|z| z.norm() == 0.0));
            }
        }
    }

    #[test]
    fn shift_singular_values_n4() {
        let (a, _) = weighted_shift_pair(4, 0.1).unwrap();
        let s = linalg::singular_values(&a).unwrap();
        for (got, want) in s.values().iter().zip([1.0, 0.1, 0.1, 0.0]) {
            assert!((got - want).abs() < 1e-15, "{got} vs {want}");
        }
    }

    #[test]
    fn shift_eigenvalue_moduli() {
        let (_, b) = weighted_shift_pair(5, 0.01).unwrap();
        let want = 0.01f64.powf(0.8);
        assert!((want - 0.025119).abs() < 1e-6);
        for z in linalg::eigenvalues(&b).unwrap().points() {
            assert!((z.norm() - want).abs() < 1e-12 * want, "{z}");
        }
        // n = 4, eps = 0.01: Hausdorff distance of zero-adjoined spectra is eps^{3/4}
        let (a, b) = weighted_shift_pair(4, 0.01).unwrap();
        let h = spectra::hausdorff(
            &spectra::adjoin_zero(&linalg::eigenvalues(&a).unwrap()),
            &spectra::adjoin_zero(&linalg::eigenvalues(&b).unwrap()),
        );
        assert!((h - 0.0316228).abs() < 1e-7, "{h}");
    }

    #[test]
    fn shift_pair_rejects_bad_input() {
        assert!(weighted_shift_pair(1, 0.1).is_err());
        assert!(weighted_shift_pair(3, 0.0).is_err());
        assert!(weighted_shift_pair(3, 1.0).is_err());
    }

    #[test]
    fn random_pair_contract() {
        let (a, b) = random_pair(5, 11, 0.0).unwrap();
        assert_eq!(a, b);
        for delta in [1e-1, 1e-3, 2.5] {
            let (a, b) = random_pair(6, 3, delta).unwrap();
            let d = linalg::operator_norm(&a.try_sub(&b).unwrap()).unwrap();
            assert!((d - delta).abs() < 1e-12 * delta.max(1.0), "{d} vs {delta}");
        }
        let x = random_pair(7, 99, 0.1).unwrap();
        let y = random_pair(7, 99, 0.1).unwrap();
        assert_eq!(x, y);
        let z = random_pair(7, 100, 0.1).unwrap();
        assert_ne!(x.0, z.0);
        // entries lie in the scaled unit disk
        let (a, _) = random_pair(4, 5, 0.1).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!(a.get(i, j).norm() <= 0.5 + 1e-15);
            }
        }
        assert!(random_pair(0, 1, 0.1).is_err());
        assert!(random_pair(3, 1, -0.1).is_err());
    }

    #[test]
    fn exp_class_profiles() {
        let p = ExpClassParams::new(1.0, 1.0, 1.0).unwrap();
        let m = exp_class_matrix(&p, 5, 7).unwrap();
        let s = linalg::singular_values(&m).unwrap();
        for (k, v) in s.values().iter().enumerate() {
            let want = (-((k + 1) as f64)).exp();
            assert!((v - want).abs() < 1e-13, "s_{} = {v} vs {want}", k + 1);
        }
        assert!(s.values().windows(2).all(|w| w[0] > w[1]));
        assert!((gauge(&m, 1.0, 1.0).unwrap() - 1.0).abs() < 1e-12);

        let p = ExpClassParams::new(0.7, 1.5, 2.5).unwrap();
        let m = exp_class_matrix(&p, 1, 3).unwrap();
        assert!((m.get(0, 0).norm() - 2.5 * (-0.7f64).exp()).abs() < 1e-14);
        let m = exp_class_matrix(&p, 4, 3).unwrap();
        assert!((gauge(&m, 0.7, 1.5).unwrap() - 2.5).abs() < 1e-12 * 2.5);
    }

    #[test]
    fn envelope_on_large_instance() {
        let p = ExpClassParams::new(1.0, 1.0, 1.0).unwrap();
        let m = exp_class_matrix(&p, 40, 7).unwrap();
        let s = linalg::singular_values(&m).unwrap();
        for (got, want) in s.values().iter().zip(p.envelope(40)) {
            assert!((got - want).abs() < 1e-13, "{got} vs {want}");
        }
        let e = p.envelope(40);
        assert!(e.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn gauge_examples() {
        assert_eq!(gauge(&ComplexMatrix::zeros(3).unwrap(), 1.0, 1.0).unwrap(), 0.0);
        let d: Vec<f64> = (1..=4).map(|k| (-(k as f64)).exp()).collect();
        let m = ComplexMatrix::real_diagonal(&d).unwrap();
        assert!((gauge(&m, 1.0, 1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!(gauge(&m, 0.0, 1.0).is_err());
        assert!(ExpClassParams::new(1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn unitaries_are_unitary() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let u = random_unitary(6, &mut rng);
        let uu = u.adjoint() * &u;
        for i in 0..6 {
            for j in 0..6 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((uu[(i, j)] - c64::new(want, 0.0)).norm() < 1e-13);
            }
        }
    }
}
