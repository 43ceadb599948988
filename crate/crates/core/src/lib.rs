//! Harmonic analysis on rank-one Riemannian symmetric spaces.
//!
//! The crate is organised around the two halves of rank-one analysis and a
//! laboratory that ties them together:
//!
//! * [`specfun`]: complex log-Gamma, Pochhammer symbols, Jacobi and
//!   Gegenbauer polynomials, normalisation constants and Gauss–Jacobi rules.
//! * [`noncompact`]: Jacobi functions on the half line, the Fourier–Jacobi
//!   transform and its inverse, the Harish-Chandra c-function, Kostant
//!   polynomials and spherical functions of type δ.
//! * [`compact_jacobi`]: Jacobi trigonometric polynomial expansions on
//!   `(0, π)` and the compact Jacobi operator.
//! * [`sphere`]: geodesic polar harmonic bases on `S^q`, the even lift for
//!   real projective spaces and the `Ω₀` model of the other projective spaces.
//! * [`chernoff`]: Laplacian iterate norms, Carleman sums, jets at the
//!   origin and consistency verdicts.

// `!(x > 0.0)` rejects NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chernoff;
pub mod compact_jacobi;
mod error;
pub mod grid;
pub mod noncompact;
pub mod series;
pub mod specfun;
pub mod sphere;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Library version, echoed in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
