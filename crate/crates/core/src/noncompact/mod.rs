//! Jacobi analysis on the half line for rank-one noncompact spaces.

mod cfunction;
mod delta;
mod jacobi_function;
mod params;
mod transform;

pub use cfunction::{
    c_function, c_ratio_stat, c_ratio_sup, kostant_q, ln_kostant_q_modulus, ln_plancherel_density, plancherel_density,
};
pub use delta::{spherical_fn_delta, step2_inequality_check, Step2Check};
pub use jacobi_function::{
    jacobi_function, jacobi_function_profile, jacobi_function_series, jacobi_function_states, OdeTolerance,
};
pub use params::{KTypeIndex, Multiplicities, NcJacobiParams};
pub use transform::{
    apply_l_spectral, forward_transform, inverse_transform, plancherel_defect, plancherel_defect_on, spectral_grid,
    weight_w, RadialFunction, SpectralDensity,
};
