//! Scalar special-function kernels.

mod gamma;
mod jacobi;
mod quadrature;

pub use gamma::{ln_gamma, log_gamma, pochhammer, pochhammer_real};
pub use jacobi::{
    gegenbauer, gegenbauer_jacobi_factor, jacobi_poly, jacobi_poly_all, jacobi_poly_derivative,
    jacobi_poly_second_derivative, jacobi_trig, ln_norm_constant, norm_constant, OrthoPolyIndex,
};
pub use quadrature::{gauss_jacobi_rule, gauss_legendre, QuadratureRule};

pub(crate) use jacobi::{check_jacobi_type, gegenbauer_value, jacobi_value, ln_norm_constant_raw};
