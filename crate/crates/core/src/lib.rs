//! Explicit upper bounds for the spectral distance of two matrices.
//!
//! The bounds are driven by singular-value data only: a growth function
//! `F(r) = prod_k (1 + r s_k)` is built from the singular values, inverted
//! through `r F(r)^2`, and the resulting map `H_F` turns the perturbation
//! size `||A - B||` into a bound on the Hausdorff distance of the spectra.
//!
//! Modules, bottom-up:
//! - [`linalg`]: dense complex matrices, eigenvalues, singular values, norms.
//! - [`spectra`]: finite spectra and Hausdorff distances.
//! - [`growth`]: the growth-function family, evaluated in the log domain.
//! - [`hmap`]: inversion of `r F(r)^2` and evaluation of `H_F`.
//! - [`detbounds`]: perturbation determinants and their two-sided bounds.
//! - [`bounds`]: spectral-distance bounds (Elsner and the `H_F` family).
//! - [`models`]: test-instance generators.
//! - [`harness`]: suites and experiments behind the `specbound` CLI.

pub mod bounds;
pub mod detbounds;
pub mod error;
pub mod growth;
pub mod harness;
pub mod hmap;
pub mod linalg;
pub mod models;
pub mod spectra;

pub use error::{Error, Result};
pub use linalg::{c64, ComplexMatrix, SingularProfile};
pub use spectra::SpectrumSet;
