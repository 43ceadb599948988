//! Harish-Chandra c-function, Plancherel density and Kostant polynomials.

use std::f64::consts::LN_2;

use num_complex::Complex64;

use super::params::{KTypeIndex, NcJacobiParams};
use crate::specfun::{ln_gamma, log_gamma, pochhammer};
use crate::{Error, Result};

/// `log c_{α,β}(λ)` from
/// `c(λ) = 2^{ϱ−iλ} Γ(α+1) Γ(iλ) / (Γ((iλ+ϱ)/2) Γ((iλ+α−β+1)/2))`.
fn ln_c_function(lam: f64, params: &NcJacobiParams) -> Result<Complex64> {
    let varrho = params.varrho();
    let il = Complex64::new(0.0, lam);
    let ln_two_pow = Complex64::new(varrho * LN_2, -lam * LN_2);
    Ok(ln_two_pow + ln_gamma(params.alpha() + 1.0) + log_gamma(il)?
        - log_gamma((il + varrho) * 0.5)?
        - log_gamma((il + params.alpha() - params.beta() + 1.0) * 0.5)?)
}

/// Harish-Chandra c-function `c_{α,β}(λ)` for `λ > 0`.
pub fn c_function(lam: f64, params: &NcJacobiParams) -> Result<Complex64> {
    if !(lam > 0.0) {
        return Err(Error::Domain(format!(
            "c-function needs lambda > 0 (Gamma(i lambda) has a pole at 0), got {lam}"
        )));
    }
    Ok(ln_c_function(lam, params)?.exp())
}

/// `log |c_{α,β}(λ)|^{−2}` for `λ > 0`.
pub fn ln_plancherel_density(lam: f64, params: &NcJacobiParams) -> Result<f64> {
    if !(lam > 0.0) {
        return Err(Error::Domain(format!("Plancherel density needs lambda > 0, got {lam}")));
    }
    Ok(-2.0 * ln_c_function(lam, params)?.re)
}

/// `|c_{α,β}(λ)|^{−2}` on `λ ≥ 0`, extended to `λ = 0` by its limit.
///
/// The limit is 0 unless a denominator Gamma also has a pole at the origin
/// (`ϱ = 0` or `α − β + 1 = 0`).
pub fn plancherel_density(lam: f64, params: &NcJacobiParams) -> f64 {
    let lam = lam.abs();
    if lam == 0.0 {
        let varrho = params.varrho();
        let shifted = params.alpha() - params.beta() + 1.0;
        if varrho > 0.0 && shifted > 0.0 {
            return 0.0;
        }
        // Both sides are analytic in λ² here; a tiny λ gives the limit to rounding.
        return ln_plancherel_density(1e-150, params).map(f64::exp).unwrap_or(0.0);
    }
    ln_plancherel_density(lam, params).map(f64::exp).unwrap_or(0.0)
}

/// Kostant polynomial
/// `Q_δ(iλ+ρ) = ((α+β+1+iλ)/2)_{(p+q)/2} · ((α−β+1+iλ)/2)_{(p−q)/2}`.
pub fn kostant_q(delta: KTypeIndex, lam: f64, params: &NcJacobiParams) -> Complex64 {
    let il = Complex64::new(0.0, lam);
    let first = (il + params.varrho()) * 0.5;
    let second = (il + params.alpha() - params.beta() + 1.0) * 0.5;
    pochhammer(first, delta.sum_half()) * pochhammer(second, delta.diff_half())
}

/// `log |Q_δ(iλ+ρ)|` by the factorwise modulus product.
pub fn ln_kostant_q_modulus(delta: KTypeIndex, lam: f64, params: &NcJacobiParams) -> f64 {
    let b1 = 0.5 * params.varrho();
    let b2 = 0.5 * (params.alpha() - params.beta() + 1.0);
    let quarter = 0.25 * lam * lam;
    let part = |b: f64, len: usize| -> f64 { (0..len).map(|j| 0.5 * ((b + j as f64).powi(2) + quarter).ln()).sum() };
    part(b1, delta.sum_half()) + part(b2, delta.diff_half())
}

/// `R(λ) = |c_{α,β}(λ)|² / |c_{α+p,β+q}(λ)|² · |Q_δ(iλ+ρ)|^{−2}`.
pub fn c_ratio_stat(lam: f64, params: &NcJacobiParams, delta: KTypeIndex) -> Result<f64> {
    if !(lam > 0.0) {
        return Err(Error::Domain(format!("c-ratio needs lambda > 0, got {lam}")));
    }
    let shifted = params.shifted(delta);
    let ln_r = -ln_plancherel_density(lam, params)? + ln_plancherel_density(lam, &shifted)?
        - 2.0 * ln_kostant_q_modulus(delta, lam, params);
    Ok(ln_r.exp())
}

/// Supremum of [`c_ratio_stat`] over `points` log-spaced values in `[lo, hi]`.
pub fn c_ratio_sup(params: &NcJacobiParams, delta: KTypeIndex, lo: f64, hi: f64, points: usize) -> Result<f64> {
    if !(lo > 0.0) || !(hi >= lo) || points == 0 {
        return Err(Error::invalid(
            "lambda_range",
            format!("bad log grid [{lo}, {hi}] x {points}"),
        ));
    }
    let step = if points > 1 {
        (hi / lo).ln() / (points - 1) as f64
    } else {
        0.0
    };
    (0..points).try_fold(0.0f64, |acc, i| {
        let lam = lo * (step * i as f64).exp();
        Ok(acc.max(c_ratio_stat(lam, params, delta)?))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let p = NcJacobiParams::new(-0.5, -0.5).unwrap();
        for lam in [0.5, 1.0, 5.0, 20.0] {
            let c = c_function(lam, &p).unwrap();
            assert!((c - Complex64::new(0.5, 0.0)).norm() < 1e-10, "{lam}: {c}");
        }
        let p = NcJacobiParams::new(0.5, 0.5).unwrap();
        let c = c_function(4.0, &p).unwrap();
        assert!((c - Complex64::new(0.0, -0.5)).norm() < 1e-10, "{c}");
    }

    #[test]
    fn pole_at_zero() {
        let p = NcJacobiParams::new(0.5, 0.5).unwrap();
        assert!(matches!(c_function(0.0, &p), Err(Error::Domain(_))));
        assert!(c_ratio_stat(0.0, &p, KTypeIndex::trivial()).is_err());
    }

    #[test]
    fn density_limits_at_origin() {
        assert_eq!(plancherel_density(0.0, &NcJacobiParams::new(0.5, 0.5).unwrap()), 0.0);
        let cos_case = plancherel_density(0.0, &NcJacobiParams::new(-0.5, -0.5).unwrap());
        assert!((cos_case - 4.0).abs() < 1e-12);
        // Small λ: |c|^{-2} ~ λ²/4 for (1/2,1/2) since c = 2/(iλ).
        let d = plancherel_density(1e-3, &NcJacobiParams::new(0.5, 0.5).unwrap());
        assert!((d - 0.25e-6).abs() < 1e-18);
    }

    #[test]
    fn kostant_trivial_and_modulus() {
        let p = NcJacobiParams::new(1.5, 0.5).unwrap();
        assert_eq!(kostant_q(KTypeIndex::trivial(), 3.0, &p), Complex64::new(1.0, 0.0));
        let d = KTypeIndex::new(2, 0).unwrap();
        let q = kostant_q(d, 3.0, &p).norm();
        // B1 = 1.5, B2 = 1.0, one factor each.
        let oracle = ((1.5f64.powi(2) + 2.25) * (1.0f64 + 2.25)).sqrt();
        assert!((q - oracle).abs() < 1e-12);
        assert!((ln_kostant_q_modulus(d, 3.0, &p).exp() - oracle).abs() < 1e-12);
    }

    #[test]
    fn kostant_asymptotics() {
        let p = NcJacobiParams::new(1.5, 0.5).unwrap();
        let d = KTypeIndex::new(2, 0).unwrap();
        let ratio = kostant_q(d, 1e4, &p).norm() / (0.5e4f64).powi(2);
        assert!((ratio - 1.0).abs() < 1e-3);
    }

    #[test]
    fn ratio_is_the_pochhammer_constant() {
        // c_{α,β}/c_{α+p,β+q} = 2^{−(p+q)} Q_δ / (α+1)_p, so R ≡ 4^{−(p+q)} / (α+1)_p².
        let p = NcJacobiParams::new(1.5, 0.5).unwrap();
        let d = KTypeIndex::new(2, 0).unwrap();
        let expect = 1.0 / (16.0 * (2.5f64 * 3.5).powi(2));
        for lam in [0.01, 0.7, 10.0, 1e3] {
            let r = c_ratio_stat(lam, &p, d).unwrap();
            assert!((r - expect).abs() < 1e-12 * expect.max(1.0) + 1e-14, "{lam}: {r}");
        }
        assert_eq!(c_ratio_stat(2.0, &p, KTypeIndex::trivial()).unwrap(), 1.0);
    }
}
