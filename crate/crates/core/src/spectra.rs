//! Finite spectra and Hausdorff distances between them.
//!
//! A [`SpectrumSet`] keeps multiplicities for reporting, but every distance
//! here is a distance between the underlying point sets.

use crate::error::{Error, Result};
use crate::linalg::c64;

/// A finite, nonempty multiset of complex numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSet {
    points: Vec<c64>,
}

impl SpectrumSet {
    pub fn new(points: Vec<c64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("spectrum set must be nonempty".into()));
        }
        if points.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidInput("spectrum points must be finite".into()));
        }
        Ok(Self { points })
    }

    pub fn from_reals(points: &[f64]) -> Result<Self> {
        Self::new(points.iter().map(|&x| c64::new(x, 0.0)).collect())
    }

    pub fn points(&self) -> &[c64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, z: c64) -> bool {
        self.points.contains(&z)
    }

    /// Moduli of the points, in stored order.
    pub fn moduli(&self) -> Vec<f64> {
        self.points.iter().map(|z| z.norm()).collect()
    }
}

/// `d(z, S) = min_{l in S} |z - l|`.
pub fn point_distance(z: c64, s: &SpectrumSet) -> f64 {
    s.points
        .iter()
        .map(|l| (z - l).norm())
        .fold(f64::INFINITY, f64::min)
}

/// `sup_{l in S1} d(l, S2)`, by exhaustive max-min.
pub fn directed_hausdorff(s1: &SpectrumSet, s2: &SpectrumSet) -> f64 {
    s1.points
        .iter()
        .map(|&l| point_distance(l, s2))
        .fold(0.0, f64::max)
}

pub fn hausdorff(s1: &SpectrumSet, s2: &SpectrumSet) -> f64 {
    directed_hausdorff(s1, s2).max(directed_hausdorff(s2, s1))
}

/// `S ∪ {0}`; unchanged if 0 is already present.
pub fn adjoin_zero(s: &SpectrumSet) -> SpectrumSet {
    let zero = c64::new(0.0, 0.0);
    let mut points = s.points.clone();
    if !points.contains(&zero) {
        points.push(zero);
    }
    SpectrumSet { points }
}

/// Checked variant of [`point_distance`] for raw point lists.
pub fn point_distance_checked(z: c64, points: &[c64]) -> Result<f64> {
    let s = SpectrumSet::new(points.to_vec())?;
    Ok(point_distance(z, &s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> c64 {
        c64::new(re, im)
    }

    fn set(points: &[c64]) -> SpectrumSet {
        SpectrumSet::new(points.to_vec()).unwrap()
    }

    #[test]
    fn point_distances() {
        assert_eq!(point_distance(c(0.0, 0.0), &set(&[c(3.0, 0.0), c(0.0, 4.0)])), 3.0);
        assert_eq!(point_distance(c(2.0, 2.0), &set(&[c(0.0, 0.0), c(2.0, 2.0)])), 0.0);
        assert_eq!(point_distance(c(1.0, 0.0), &set(&[c(0.0, 0.0), c(2.0, 2.0)])), 1.0);
        assert!(matches!(
            point_distance_checked(c(0.0, 0.0), &[]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn directed_and_full_hausdorff() {
        let zero = set(&[c(0.0, 0.0)]);
        let zero_one = SpectrumSet::from_reals(&[0.0, 1.0]).unwrap();
        let three_four = SpectrumSet::from_reals(&[3.0, 4.0]).unwrap();
        assert_eq!(directed_hausdorff(&zero_one, &zero), 1.0);
        assert_eq!(directed_hausdorff(&zero, &zero_one), 0.0);
        assert_eq!(directed_hausdorff(&zero, &three_four), 3.0);
        assert_eq!(hausdorff(&zero, &three_four), 4.0);
        assert_eq!(hausdorff(&three_four, &three_four), 0.0);
    }

    #[test]
    fn adjoining_zero() {
        let s = adjoin_zero(&SpectrumSet::from_reals(&[1.0]).unwrap());
        assert_eq!(s.points(), &[c(1.0, 0.0), c(0.0, 0.0)]);
        let s = adjoin_zero(&SpectrumSet::from_reals(&[0.0, 1.0]).unwrap());
        assert_eq!(s.len(), 2);
        let s = adjoin_zero(&set(&[c(0.0, 1.0)]));
        assert_eq!(s.points(), &[c(0.0, 1.0), c(0.0, 0.0)]);
    }

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(SpectrumSet::new(vec![]).is_err());
        assert!(SpectrumSet::new(vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn multiplicity_is_ignored_by_distances() {
        let a = SpectrumSet::from_reals(&[1.0, 1.0, 2.0]).unwrap();
        let b = SpectrumSet::from_reals(&[2.0, 1.0]).unwrap();
        assert_eq!(hausdorff(&a, &b), 0.0);
    }

    fn arb_set() -> impl Strategy<Value = SpectrumSet> {
        prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..8)
            .prop_map(|v| SpectrumSet::new(v.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn hausdorff_is_a_metric(a in arb_set(), b in arb_set(), x in arb_set()) {
            prop_assert_eq!(hausdorff(&a, &b), hausdorff(&b, &a));
            prop_assert!(hausdorff(&a, &x) <= hausdorff(&a, &b) + hausdorff(&b, &x) + 1e-12);
            prop_assert_eq!(hausdorff(&a, &a), 0.0);
        }

        #[test]
        fn zero_distance_iff_same_point_set(a in arb_set(), b in arb_set()) {
            let same = a.points().iter().all(|p| b.contains(*p))
                && b.points().iter().all(|p| a.contains(*p));
            prop_assert_eq!(hausdorff(&a, &b) == 0.0, same);
        }
    }
}
