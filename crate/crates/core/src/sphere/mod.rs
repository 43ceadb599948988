//! Geodesic-polar analysis on spheres and compact projective spaces.

mod fiber;
mod harmonics;
mod projective;

pub use fiber::FiberBasis;
pub use harmonics::{
    a_nl, basis_s, even_lift_decompose, fiber_project, g_extract, norm_domination_check, sphere_apply_delta_spectral,
    sphere_decompose, sphere_synthesize, DominationCheck, HarmonicCoefficients, PolarFunction, SphereModel,
};
pub use projective::{
    family_qk, projective_apply_lambda_spectral, projective_basis_q, projective_decompose, projective_domination_check,
    projective_synthesize, ProjectiveFamily, ProjectiveModel,
};
