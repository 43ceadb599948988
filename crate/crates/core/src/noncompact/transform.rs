//! Fourier–Jacobi transform pair on the half line.
//!
//! ```text
//! Jf(λ) = ∫₀^R f(r) φ_λ(r) w(r) dr
//! f(r)  = (1/2π) ∫₀^Λ Jf(λ) φ_λ(r) |c(λ)|^{−2} dλ
//! ```
//!
//! Both integrals are weighted sums over the sample grids. Each `φ_λ`
//! profile comes from a single ODE pass over the radial nodes, and the
//! outer loops run in parallel with results gathered in index order.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::cfunction::plancherel_density;
use super::jacobi_function::jacobi_function_profile;
use super::params::NcJacobiParams;
use crate::grid::SampleGrid;
use crate::{Error, Result};

/// Samples of a radial function on `(0, R]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunction {
    grid: SampleGrid,
    values: Vec<Complex64>,
    params: NcJacobiParams,
}

impl RadialFunction {
    pub fn new(grid: SampleGrid, values: Vec<Complex64>, params: NcJacobiParams) -> Result<Self> {
        if !(grid.first() > 0.0) {
            return Err(Error::invalid("r_grid", "radial nodes must be positive"));
        }
        check_samples(&grid, &values, "values")?;
        Ok(Self { grid, values, params })
    }

    pub fn from_fn<F: Fn(f64) -> Complex64>(grid: SampleGrid, params: NcJacobiParams, f: F) -> Result<Self> {
        let values = grid.nodes().iter().map(|&r| f(r)).collect();
        Self::new(grid, values, params)
    }

    pub fn grid(&self) -> &SampleGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn params(&self) -> &NcJacobiParams {
        &self.params
    }

    /// `(∫|f|² w dr)^{1/2}`.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.grid
            .nodes()
            .iter()
            .zip(self.grid.weights())
            .zip(&self.values)
            .map(|((&r, &w), v)| w * v.norm_sqr() * weight_w(r, &self.params))
            .sum()
    }
}

/// Samples of a Fourier–Jacobi transform on `[0, Λ]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDensity {
    grid: SampleGrid,
    values: Vec<Complex64>,
    params: NcJacobiParams,
}

impl SpectralDensity {
    pub fn new(grid: SampleGrid, values: Vec<Complex64>, params: NcJacobiParams) -> Result<Self> {
        if grid.first() < 0.0 {
            return Err(Error::invalid("lam_grid", "spectral nodes must be nonnegative"));
        }
        check_samples(&grid, &values, "values")?;
        Ok(Self { grid, values, params })
    }

    pub fn from_fn<F: Fn(f64) -> Complex64>(grid: SampleGrid, params: NcJacobiParams, f: F) -> Result<Self> {
        let values = grid.nodes().iter().map(|&l| f(l)).collect();
        Self::new(grid, values, params)
    }

    pub fn grid(&self) -> &SampleGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn params(&self) -> &NcJacobiParams {
        &self.params
    }

    /// Band limit `Λ`.
    pub fn band_limit(&self) -> f64 {
        self.grid.last()
    }

    /// `(1/2π) ∫ |g|² |c|^{−2} dλ`, which equals `∫|f|² w dr` for `g = Jf`.
    pub fn norm_sqr(&self) -> f64 {
        spectral_integral(&self.grid, &self.params, |i| self.values[i].norm_sqr())
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `log` of `(1/2π) ∫ |g|² (λ²+ϱ²)^{2m} |c|^{−2} dλ`, accumulated with a
    /// running maximum so large `m` does not overflow. `−∞` for `g ≡ 0`.
    pub fn ln_iterate_norm_sqr(&self, m: usize) -> f64 {
        let varrho2 = self.params.varrho().powi(2);
        let terms = self.grid.nodes().iter().enumerate().map(|(i, &lam)| {
            let base = self.grid.weights()[i] * self.values[i].norm_sqr() * plancherel_density(lam, &self.params);
            if base > 0.0 {
                base.ln() + 2.0 * m as f64 * (lam * lam + varrho2).ln()
            } else {
                f64::NEG_INFINITY
            }
        });
        log_sum_exp(terms) - (2.0 * PI).ln()
    }
}

fn check_samples(grid: &SampleGrid, values: &[Complex64], field: &'static str) -> Result<()> {
    if values.len() != grid.len() {
        return Err(Error::invalid(
            field,
            format!("{} samples for {} grid nodes", values.len(), grid.len()),
        ));
    }
    if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::invalid(field, "samples must be finite"));
    }
    Ok(())
}

pub(crate) fn log_sum_exp(terms: impl Iterator<Item = f64>) -> f64 {
    let terms: Vec<f64> = terms.collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

fn spectral_integral<F: Fn(usize) -> f64>(grid: &SampleGrid, params: &NcJacobiParams, f: F) -> f64 {
    let sum: f64 = grid
        .nodes()
        .iter()
        .zip(grid.weights())
        .enumerate()
        .map(|(i, (&lam, &w))| w * f(i) * plancherel_density(lam, params))
        .sum();
    sum / (2.0 * PI)
}

/// `ln(2 sinh r)` without overflow for large `r`.
fn ln_two_sinh(r: f64) -> f64 {
    r + (-(-2.0 * r).exp_m1()).ln()
}

/// `ln(2 cosh r)`.
fn ln_two_cosh(r: f64) -> f64 {
    r + (-2.0 * r).exp().ln_1p()
}

/// `w_{α,β}(r) = (2 sinh r)^{2α+1} (2 cosh r)^{2β+1}`.
pub fn weight_w(r: f64, params: &NcJacobiParams) -> f64 {
    let a = 2.0 * params.alpha() + 1.0;
    let b = 2.0 * params.beta() + 1.0;
    let mut ln_w = 0.0;
    if a != 0.0 {
        ln_w += a * ln_two_sinh(r);
    }
    if b != 0.0 {
        ln_w += b * ln_two_cosh(r);
    }
    ln_w.exp()
}

/// `J_{α,β} f` at the nodes of `lam_grid`.
pub fn forward_transform(f: &RadialFunction, lam_grid: &SampleGrid) -> Result<SpectralDensity> {
    if lam_grid.first() < 0.0 {
        return Err(Error::invalid("lam_grid", "spectral nodes must be nonnegative"));
    }
    let params = f.params;
    let radii = f.grid.nodes();
    let weighted: Vec<Complex64> = radii
        .iter()
        .zip(f.grid.weights())
        .zip(&f.values)
        .map(|((&r, &w), &v)| v * (w * weight_w(r, &params)))
        .collect();
    let values: Vec<Complex64> = lam_grid
        .nodes()
        .par_iter()
        .map(|&lam| {
            let phi = jacobi_function_profile(lam, &params, radii);
            weighted.iter().zip(&phi).map(|(v, p)| v * p).sum()
        })
        .collect();
    SpectralDensity::new(lam_grid.clone(), values, params)
}

/// Inverse transform of a band-limited density onto `r_grid`.
pub fn inverse_transform(g: &SpectralDensity, r_grid: &SampleGrid) -> Result<RadialFunction> {
    if !(r_grid.first() > 0.0) {
        return Err(Error::invalid("r_grid", "radial nodes must be positive"));
    }
    let params = g.params;
    let radii = r_grid.nodes();
    let lam_nodes = g.grid.nodes();
    let coef: Vec<Complex64> = lam_nodes
        .iter()
        .zip(g.grid.weights())
        .zip(&g.values)
        .map(|((&lam, &w), &v)| v * (w * plancherel_density(lam, &params) / (2.0 * PI)))
        .collect();
    let profiles: Vec<Vec<f64>> = lam_nodes
        .par_iter()
        .map(|&lam| jacobi_function_profile(lam, &params, radii))
        .collect();
    let values = (0..radii.len())
        .into_par_iter()
        .map(|j| coef.iter().zip(&profiles).map(|(c, p)| c * p[j]).sum())
        .collect();
    RadialFunction::new(r_grid.clone(), values, params)
}

/// Composite Gauss–Legendre grid on `[0, Λ]` fine enough to resolve
/// transforms of functions supported in `[0, R]`.
pub fn spectral_grid(band_limit: f64, support: f64) -> Result<SampleGrid> {
    let panels = ((band_limit * support.max(1.0)) / 4.0).ceil().max(4.0) as usize;
    SampleGrid::panel_gauss_legendre(0.0, band_limit, panels, 16)
}

/// `| ∫|f|² w dr − (1/2π)∫|Jf|² |c|^{−2} dλ |` with `Λ` doubled until the
/// last doubling adds less than `1e−10` of the spectral mass.
///
/// Sampled data on a finite grid leaves a spectral tail decaying like
/// `1/Λ`, so a much tighter stop would chase rounding-level mass at a cost
/// that quadruples per doubling.
pub fn plancherel_defect(f: &RadialFunction) -> Result<f64> {
    let lhs = f.norm_sqr();
    if lhs == 0.0 {
        return Ok(0.0);
    }
    let support = f.grid.last();
    let mut band = 8.0;
    let mut prev = spectral_mass(f, band, support)?;
    for _ in 0..6 {
        band *= 2.0;
        let next = spectral_mass(f, band, support)?;
        let settled = (next - prev).abs() <= 1e-10 * next.abs();
        prev = next;
        if settled {
            break;
        }
    }
    Ok((lhs - prev).abs())
}

fn spectral_mass(f: &RadialFunction, band: f64, support: f64) -> Result<f64> {
    let grid = spectral_grid(band, support)?;
    Ok(forward_transform(f, &grid)?.norm_sqr())
}

/// Plancherel defect with a caller-fixed spectral grid.
pub fn plancherel_defect_on(f: &RadialFunction, lam_grid: &SampleGrid) -> Result<f64> {
    Ok((f.norm_sqr() - forward_transform(f, lam_grid)?.norm_sqr()).abs())
}

/// Spectral action of `(−ℒ)^m`: multiply by `(λ² + ϱ²)^m`.
pub fn apply_l_spectral(g: &SpectralDensity, m: usize) -> SpectralDensity {
    let varrho2 = g.params.varrho().powi(2);
    let values = g
        .grid
        .nodes()
        .iter()
        .zip(&g.values)
        .map(|(&lam, &v)| v * (lam * lam + varrho2).powi(m as i32))
        .collect();
    SpectralDensity {
        grid: g.grid.clone(),
        values,
        params: g.params,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_bump(lam0: f64, sigma: f64) -> impl Fn(f64) -> Complex64 {
        move |l: f64| {
            let a = (-(l - lam0).powi(2) / (2.0 * sigma * sigma)).exp();
            let b = (-(l + lam0).powi(2) / (2.0 * sigma * sigma)).exp();
            Complex64::new(a + b, 0.0)
        }
    }

    fn rel_l2(a: &[Complex64], b: &[Complex64], w: &[f64]) -> f64 {
        let num: f64 = a.iter().zip(b).zip(w).map(|((x, y), w)| w * (x - y).norm_sqr()).sum();
        let den: f64 = b.iter().zip(w).map(|(y, w)| w * y.norm_sqr()).sum();
        (num / den).sqrt()
    }

    #[test]
    fn weight_values() {
        let p = NcJacobiParams::new(-0.5, -0.5).unwrap();
        assert_eq!(weight_w(3.7, &p), 1.0);
        let p = NcJacobiParams::new(0.5, 0.5).unwrap();
        let oracle = (2.0 * 1f64.sinh()).powi(2) * (2.0 * 1f64.cosh()).powi(2);
        assert!((weight_w(1.0, &p) - oracle).abs() < 1e-12 * oracle);
        assert!((oracle - 52.616).abs() < 1e-3);
        let p = NcJacobiParams::new(1.0, 0.0).unwrap();
        let r = 1e-5;
        let ratio = weight_w(r, &p) / ((2.0 * r).powi(3) * 2.0);
        assert!((ratio - 1.0).abs() < 1e-9);
        assert!(weight_w(150.0, &p).is_finite());
    }

    #[test]
    fn cosine_transform_equivalence() {
        let p = NcJacobiParams::new(-0.5, -0.5).unwrap();
        let rg = SampleGrid::panel_gauss_legendre(0.0, 6.0, 24, 16).unwrap();
        let f = RadialFunction::from_fn(rg, p, |r| Complex64::new((-r * r).exp(), 0.0)).unwrap();
        let lg = SampleGrid::new(vec![0.0, 0.5, 1.0, 2.5, 4.0], vec![1.0; 5]).unwrap();
        let g = forward_transform(&f, &lg).unwrap();
        for (&lam, v) in lg.nodes().iter().zip(g.values()) {
            // ∫₀^∞ e^{−r²} cos(λr) dr = (√π/2) e^{−λ²/4}.
            let oracle = 0.5 * PI.sqrt() * (-lam * lam / 4.0).exp();
            assert!((v.re - oracle).abs() < 1e-8 && v.im == 0.0, "{lam}: {v}");
        }
    }

    #[test]
    fn inverse_matches_cosine_oracle() {
        let p = NcJacobiParams::new(-0.5, -0.5).unwrap();
        let lg = SampleGrid::panel_gauss_legendre(0.0, 10.0, 20, 16).unwrap();
        let g = SpectralDensity::from_fn(lg.clone(), p, gaussian_bump(3.0, 1.0)).unwrap();
        let rg = SampleGrid::new(vec![0.1, 0.7, 1.5, 3.0], vec![1.0; 4]).unwrap();
        let f = inverse_transform(&g, &rg).unwrap();
        for (&r, v) in rg.nodes().iter().zip(f.values()) {
            let oracle: f64 = lg
                .nodes()
                .iter()
                .zip(lg.weights())
                .map(|(&l, &w)| w * gaussian_bump(3.0, 1.0)(l).re * (l * r).cos())
                .sum::<f64>()
                * 2.0
                / PI;
            assert!((v.re - oracle).abs() < 1e-8, "{r}: {v} vs {oracle}");
        }
    }

    #[test]
    fn round_trip_gaussian_bump() {
        for (a, b) in [(0.5, -0.5), (1.5, 0.5)] {
            let p = NcJacobiParams::new(a, b).unwrap();
            let lg = SampleGrid::panel_gauss_legendre(0.0, 10.0, 20, 16).unwrap();
            let g = SpectralDensity::from_fn(lg.clone(), p, gaussian_bump(3.0, 1.0)).unwrap();
            let rg = SampleGrid::panel_gauss_legendre(0.0, 10.0, 40, 16).unwrap();
            let f = inverse_transform(&g, &rg).unwrap();
            let back = forward_transform(&f, &lg).unwrap();
            let err = rel_l2(back.values(), g.values(), lg.weights());
            assert!(err < 1e-4, "({a},{b}): {err}");
        }
    }

    #[test]
    fn plancherel_for_synthesized_functions() {
        let p = NcJacobiParams::new(1.5, 0.5).unwrap();
        let lg = SampleGrid::panel_gauss_legendre(0.0, 10.0, 20, 16).unwrap();
        let g = SpectralDensity::from_fn(lg, p, gaussian_bump(2.0, 1.0)).unwrap();
        let rg = SampleGrid::panel_gauss_legendre(0.0, 10.0, 40, 16).unwrap();
        let f = inverse_transform(&g, &rg).unwrap();
        let n2 = f.norm_sqr();
        assert!((n2 - g.norm_sqr()).abs() < 1e-6 * n2);
        let d = plancherel_defect(&f).unwrap();
        assert!(d < 1e-6 * n2, "defect {d} vs {n2}");
    }

    #[test]
    fn cosine_parseval() {
        let p = NcJacobiParams::new(-0.5, -0.5).unwrap();
        let rg = SampleGrid::panel_gauss_legendre(0.0, 7.0, 28, 16).unwrap();
        let f = RadialFunction::from_fn(rg, p, |r| Complex64::new((-r * r).exp(), 0.0)).unwrap();
        // ∫₀^∞ e^{−2r²} dr = √(π/8).
        assert!((f.norm_sqr() - (PI / 8.0).sqrt()).abs() < 1e-12);
        assert!(plancherel_defect(&f).unwrap() < 1e-8);
    }

    #[test]
    fn zero_inputs() {
        let p = NcJacobiParams::new(0.5, 0.5).unwrap();
        let rg = SampleGrid::panel_gauss_legendre(0.0, 2.0, 2, 8).unwrap();
        let f = RadialFunction::from_fn(rg.clone(), p, |_| Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(plancherel_defect(&f).unwrap(), 0.0);
        let lg = spectral_grid(4.0, 2.0).unwrap();
        assert!(forward_transform(&f, &lg)
            .unwrap()
            .values()
            .iter()
            .all(|v| v.norm() == 0.0));
        let g = SpectralDensity::from_fn(lg, p, |_| Complex64::new(0.0, 0.0)).unwrap();
        assert!(inverse_transform(&g, &rg)
            .unwrap()
            .values()
            .iter()
            .all(|v| v.norm() == 0.0));
        assert_eq!(g.ln_iterate_norm_sqr(3), f64::NEG_INFINITY);
    }

    #[test]
    fn spectral_multiplier() {
        let p = NcJacobiParams::new(1.0, 0.0).unwrap();
        let lg = spectral_grid(6.0, 4.0).unwrap();
        let g = SpectralDensity::from_fn(lg, p, gaussian_bump(2.0, 0.7)).unwrap();
        assert_eq!(apply_l_spectral(&g, 0), g);
        let g2 = apply_l_spectral(&g, 2);
        let direct = g2.norm_sqr().ln();
        assert!((direct - g.ln_iterate_norm_sqr(2)).abs() < 1e-12);
    }

    #[test]
    fn single_peak_scaling() {
        let p = NcJacobiParams::new(1.5, 0.5).unwrap();
        let lg = SampleGrid::new(vec![3.0], vec![1.0]).unwrap();
        let g = SpectralDensity::new(lg, vec![Complex64::new(1.0, 0.0)], p).unwrap();
        let mu = 9.0 + p.varrho().powi(2);
        for m in 1..4 {
            let ratio = apply_l_spectral(&g, m).norm() / g.norm();
            assert!((ratio / mu.powi(m as i32) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn narrow_spectrum_reproduces_phi() {
        let p = NcJacobiParams::new(0.5, -0.5).unwrap();
        let sigma = 1e-3;
        let lg = SampleGrid::panel_gauss_legendre(3.0 - 10.0 * sigma, 3.0 + 10.0 * sigma, 4, 16).unwrap();
        let bump = SpectralDensity::from_fn(lg.clone(), p, gaussian_bump(3.0, sigma)).unwrap();
        let mass = spectral_integral(&lg, &p, |i| bump.values()[i].re);
        let g = SpectralDensity::new(lg, bump.values().iter().map(|v| v / mass).collect(), p).unwrap();
        let rg = SampleGrid::trapezoid((1..=20).map(|i| 0.1 * i as f64).collect()).unwrap();
        let f = inverse_transform(&g, &rg).unwrap();
        let phi = jacobi_function_profile(3.0, &p, rg.nodes());
        let err = f
            .values()
            .iter()
            .zip(&phi)
            .map(|(v, p)| (v.re - p).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-3, "{err}");
    }

    #[test]
    fn grid_operator_cross_check() {
        // ‖(−ℒ)f‖² from the spectral side against a central-difference ℒ on
        // the synthesized function.
        let p = NcJacobiParams::new(0.5, 0.5).unwrap();
        let lg = SampleGrid::panel_gauss_legendre(0.0, 9.0, 18, 16).unwrap();
        let g = SpectralDensity::from_fn(lg, p, gaussian_bump(2.0, 1.0)).unwrap();
        let rg = SampleGrid::panel_gauss_legendre(0.0, 10.0, 40, 16).unwrap();
        let h = 1e-3;
        let shift = |d: f64| {
            let nodes: Vec<f64> = rg.nodes().iter().map(|r| r + d).collect();
            let grid = SampleGrid::new(nodes, rg.weights().to_vec()).unwrap();
            inverse_transform(&g, &grid).unwrap()
        };
        let (fm, f0, fp) = (shift(-h), shift(0.0), shift(h));
        let a1 = 2.0 * p.alpha() + 1.0;
        let b1 = 2.0 * p.beta() + 1.0;
        let lf: Vec<Complex64> = rg
            .nodes()
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let d2 = (fp.values()[i] - 2.0 * f0.values()[i] + fm.values()[i]) / (h * h);
                let d1 = (fp.values()[i] - fm.values()[i]) / (2.0 * h);
                -(d2 + d1 * (a1 / r.tanh() + b1 * r.tanh()))
            })
            .collect();
        let grid_norm = RadialFunction::new(rg, lf, p).unwrap().norm_sqr();
        let spectral_norm = apply_l_spectral(&g, 1).norm_sqr();
        assert!(
            (grid_norm / spectral_norm - 1.0).abs() < 1e-4,
            "{grid_norm} {spectral_norm}"
        );
    }
}
