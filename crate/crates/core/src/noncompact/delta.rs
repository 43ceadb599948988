//! Spherical functions of K-type `δ = (p, q)` and the norm inequality
//! relating shifted Jacobi iterates to the unshifted ones.

use num_complex::Complex64;
use serde::Serialize;

use super::cfunction::{c_ratio_sup, kostant_q, ln_kostant_q_modulus, ln_plancherel_density, plancherel_density};
use super::jacobi_function::jacobi_function;
use super::params::{KTypeIndex, NcJacobiParams};
use super::transform::{log_sum_exp, SpectralDensity};
use crate::specfun::pochhammer_real;
use crate::Result;

/// `Φ_{λ,δ}(a_r) = Q_δ(iλ+ρ) (α+1)_p^{−1} (sinh r)^p (cosh r)^q φ_λ^{(α+p,β+q)}(r)`.
pub fn spherical_fn_delta(lam: f64, delta: KTypeIndex, params: &NcJacobiParams, r: f64) -> Complex64 {
    let shifted = params.shifted(delta);
    let prefactor = r.sinh().powi(delta.p() as i32) * r.cosh().powi(delta.q())
        / pochhammer_real(params.alpha() + 1.0, delta.p() as usize);
    kostant_q(delta, lam, params) * (prefactor * jacobi_function(lam, &shifted, r))
}

/// Outcome of [`step2_inequality_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Step2Check {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / rhs`, or 0 when both vanish.
    pub ratio: f64,
    /// Constant `C₁` used on the right-hand side.
    pub c1: f64,
}

/// Range and resolution of the log grid used for `sup R`.
const SUP_GRID: (f64, f64, usize) = (1e-2, 1e3, 241);

/// Compares
///
/// ```text
/// lhs = (∫ (λ²+ρ_δ²)^{2m} |G|² |Q_δ|^{−2} |c_{α+p,β+q}|^{−2} dλ)^{1/2}
/// rhs = C₁^m (∫ (λ²+ϱ²)^{2m} |G|² |c_{α,β}|^{−2} dλ)^{1/2}
/// ```
///
/// with `C₁ = (ρ_δ/ϱ)² · max(1, sup R)`. Both integrals carry the `1/2π`
/// of the inversion formula.
pub fn step2_inequality_check(g: &SpectralDensity, delta: KTypeIndex, m: usize) -> Result<Step2Check> {
    let params = g.params();
    let shifted = params.shifted(delta);
    let varrho = params.varrho();
    let rho_delta = shifted.varrho();
    let sup_r = if delta == KTypeIndex::trivial() {
        1.0
    } else {
        let (lo, hi, n) = SUP_GRID;
        c_ratio_sup(params, delta, lo, hi, n)?
    };
    let c_const = (rho_delta / varrho).powi(2);
    let c1 = c_const * sup_r.max(1.0);

    let grid = g.grid();
    let two_m = 2.0 * m as f64;
    let mut ln_lhs_terms = Vec::with_capacity(grid.len());
    let mut ln_rhs_terms = Vec::with_capacity(grid.len());
    for ((&lam, &w), v) in grid.nodes().iter().zip(grid.weights()).zip(g.values()) {
        let base = w * v.norm_sqr();
        if base <= 0.0 {
            continue;
        }
        let lam_eff = lam.max(1e-150);
        let ln_shifted = ln_plancherel_density(lam_eff, &shifted)? - 2.0 * ln_kostant_q_modulus(delta, lam_eff, params);
        ln_lhs_terms.push(base.ln() + two_m * (lam * lam + rho_delta * rho_delta).ln() + ln_shifted);
        let dens = plancherel_density(lam, params);
        if dens > 0.0 {
            ln_rhs_terms.push(base.ln() + two_m * (lam * lam + varrho * varrho).ln() + dens.ln());
        }
    }
    let ln_two_pi = (2.0 * std::f64::consts::PI).ln();
    let ln_lhs = 0.5 * (log_sum_exp(ln_lhs_terms.into_iter()) - ln_two_pi);
    let ln_rhs = m as f64 * c1.ln() + 0.5 * (log_sum_exp(ln_rhs_terms.into_iter()) - ln_two_pi);
    let ratio = if ln_lhs == f64::NEG_INFINITY {
        0.0
    } else {
        (ln_lhs - ln_rhs).exp()
    };
    Ok(Step2Check {
        lhs: ln_lhs.exp(),
        rhs: ln_rhs.exp(),
        ratio,
        c1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::SampleGrid;

    #[test]
    fn trivial_type_is_phi() {
        let p = NcJacobiParams::new(1.5, 0.5).unwrap();
        for r in [0.0, 0.3, 2.0] {
            let v = spherical_fn_delta(2.5, KTypeIndex::trivial(), &p, r);
            assert_eq!(v, Complex64::new(jacobi_function(2.5, &p, r), 0.0));
        }
    }

    #[test]
    fn small_r_behaviour() {
        let p = NcJacobiParams::new(1.5, 0.5).unwrap();
        let d = KTypeIndex::new(2, 0).unwrap();
        let r = 1e-4;
        let lam = 3.0;
        let lhs = spherical_fn_delta(lam, d, &p, r) / r.powi(2);
        let rhs = kostant_q(d, lam, &p) / pochhammer_real(2.5, 2);
        assert!((lhs - rhs).norm() / rhs.norm() < 1e-3);
    }

    #[test]
    fn shifted_factor_solves_shifted_equation() {
        let p = NcJacobiParams::new(0.5, -0.5).unwrap();
        let d = KTypeIndex::new(3, 1).unwrap();
        let s = p.shifted(d);
        let lam = 2.0;
        let (a1, b1) = (2.0 * s.alpha() + 1.0, 2.0 * s.beta() + 1.0);
        let eig = lam * lam + s.varrho().powi(2);
        for r in [0.4, 1.0, 2.5] {
            let h = 1e-2;
            let prefactor = |x: f64| kostant_q(d, lam, &p) * (x.sinh().powi(3) * x.cosh() / pochhammer_real(1.5, 3));
            let factor = |x: f64| spherical_fn_delta(lam, d, &p, x) / prefactor(x);
            let f: Vec<Complex64> = (-2..=2).map(|k| factor(r + k as f64 * h)).collect();
            let f0 = f[2];
            let d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h);
            let d1 = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h);
            let res = d2 + d1 * (a1 / r.tanh() + b1 * r.tanh()) + f0 * eig;
            assert!(res.norm() < 1e-6 * eig, "{r}: {res}");
        }
    }

    fn sample_density(p: NcJacobiParams) -> SpectralDensity {
        let lg = SampleGrid::panel_gauss_legendre(0.0, 8.0, 8, 16).unwrap();
        SpectralDensity::from_fn(lg, p, |l| {
            Complex64::new((-(l - 2.0).powi(2)).exp(), 0.3 * (-l * l).exp())
        })
        .unwrap()
    }

    #[test]
    fn step2_trivial_and_zero() {
        let p = NcJacobiParams::new(1.5, 0.5).unwrap();
        let g = sample_density(p);
        let c = step2_inequality_check(&g, KTypeIndex::trivial(), 2).unwrap();
        assert_eq!(c.c1, 1.0);
        assert!((c.lhs - c.rhs).abs() <= 1e-14 * c.rhs, "{c:?}");
        let zero = SpectralDensity::from_fn(g.grid().clone(), p, |_| Complex64::new(0.0, 0.0)).unwrap();
        let c = step2_inequality_check(&zero, KTypeIndex::new(2, 0).unwrap(), 1).unwrap();
        assert_eq!((c.lhs, c.rhs, c.ratio), (0.0, 0.0, 0.0));
    }

    #[test]
    fn step2_holds() {
        let p = NcJacobiParams::new(1.5, 0.5).unwrap();
        let g = sample_density(p);
        for delta in [KTypeIndex::new(2, 0).unwrap(), KTypeIndex::new(3, -1).unwrap()] {
            for m in 1..=3 {
                let c = step2_inequality_check(&g, delta, m).unwrap();
                assert!(c.ratio <= 1.0 + 1e-10, "{delta:?} {m}: {c:?}");
                assert!(c.ratio > 0.0);
            }
        }
    }
}
