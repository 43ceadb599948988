//! Geodesic-polar harmonic analysis on `S^q`.
//!
//! Points are `(cos θ, ξ' sin θ)` with `θ ∈ (0, π)`, `ξ' ∈ S^{q−1}`, and
//! inner products use `(sin θ)^{q−1} dθ dσ_{q−1}` with `dσ_{q−1}` normalized.
//! The basis is
//!
//! ```text
//! S_{n,l,k} = a_{n,l} (sin θ)^l C_{n−l}^{l+(q−1)/2}(cos θ) S'_{l,k}(ξ')
//! ```

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::fiber::FiberBasis;
use crate::compact_jacobi::{CpJacobiParams, JacobiAnalyzer};
use crate::specfun::{gauss_jacobi_rule, gegenbauer_value, ln_gamma, ln_norm_constant_raw, QuadratureRule};
use crate::{Error, Result};

/// One coefficient entry keyed `(deg, l, k)`.
pub(crate) type Entry = ((usize, usize, usize), f64);

/// `log a_{n,l}` for `n ≥ l`.
fn ln_a_nl(q: usize, n: usize, l: usize) -> f64 {
    let qf = q as f64;
    let (nf, lf) = (n as f64, l as f64);
    let alpha = lf + 0.5 * qf - 1.0;
    -(lf + 0.5 * (qf - 1.0)) * std::f64::consts::LN_2 + ln_gamma(2.0 * lf + qf - 1.0) + ln_gamma(nf + 0.5 * qf)
        - ln_gamma(lf + 0.5 * qf)
        - ln_gamma(nf + lf + qf - 1.0)
        + ln_norm_constant_raw(n - l, alpha, alpha)
}

/// Normalizing constant `a_{n,l}` of `S_{n,l,k}` on `S^q`.
pub fn a_nl(q: usize, n: usize, l: usize) -> Result<f64> {
    if q < 2 {
        return Err(Error::invalid("q", format!("sphere dimension must be >= 2, got {q}")));
    }
    if n < l {
        return Err(Error::invalid("l", format!("need n >= l, got n={n}, l={l}")));
    }
    Ok(ln_a_nl(q, n, l).exp())
}

/// `S^q` with a Gauss–Jacobi θ-grid and a fiber basis on `S^{q−1}`.
#[derive(Debug, Clone)]
pub struct SphereModel {
    q: usize,
    deg_max: usize,
    rule: QuadratureRule,
    theta: Vec<f64>,
    fiber: FiberBasis,
}

impl SphereModel {
    /// Default fiber: circular harmonics for `q = 2`, zonal for `q ≥ 3`.
    pub fn new(q: usize, deg_max: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::invalid("q", format!("sphere dimension must be >= 2, got {q}")));
        }
        let fiber = if q == 2 {
            FiberBasis::circle(deg_max, 2 * deg_max + 2)?
        } else {
            FiberBasis::zonal(q)
        };
        Self::with_fiber(q, deg_max, fiber)
    }

    pub fn with_fiber(q: usize, deg_max: usize, fiber: FiberBasis) -> Result<Self> {
        if q < 2 {
            return Err(Error::invalid("q", format!("sphere dimension must be >= 2, got {q}")));
        }
        let e = 0.5 * (q as f64 - 2.0);
        let rule = gauss_jacobi_rule(deg_max + 1, e, e)?;
        let theta = rule.nodes().iter().map(|x| x.acos()).collect();
        Ok(Self {
            q,
            deg_max,
            rule,
            theta,
            fiber,
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn deg_max(&self) -> usize {
        self.deg_max
    }

    /// θ-nodes, decreasing (images of increasing `x = cos θ`).
    pub fn theta_nodes(&self) -> &[f64] {
        &self.theta
    }

    /// Weights for `(sin θ)^{q−1} dθ` at the θ-nodes.
    pub fn theta_weights(&self) -> &[f64] {
        self.rule.weights()
    }

    pub fn fiber(&self) -> &FiberBasis {
        &self.fiber
    }

    /// Total mass `∫₀^π (sin θ)^{q−1} dθ` of the polar measure.
    pub fn mass(&self) -> f64 {
        self.rule.weights().iter().sum()
    }

    /// Spectral shift `(q−1)/2`: eigenvalue of degree `n` is `(n + shift)²`.
    pub fn shift(&self) -> f64 {
        0.5 * (self.q as f64 - 1.0)
    }

    /// `a_{n,l} (sin θ)^l C_{n−l}^{l+(q−1)/2}(cos θ)`.
    pub fn radial_profile(&self, n: usize, l: usize, theta: f64) -> Result<f64> {
        let a = a_nl(self.q, n, l)?;
        let lam = l as f64 + self.shift();
        Ok(a * theta.sin().powi(l as i32) * gegenbauer_value(n - l, lam, theta.cos()))
    }

    /// `∫∫ |F|² (sin θ)^{q−1} dθ dσ`.
    pub fn norm_sqr(&self, f: &PolarFunction) -> Result<f64> {
        self.check_shape(f)?;
        let nf = self.fiber.len();
        Ok(self
            .theta_weights()
            .iter()
            .enumerate()
            .map(|(i, wt)| {
                let row = &f.values[i * nf..(i + 1) * nf];
                wt * self
                    .fiber
                    .weights()
                    .iter()
                    .zip(row)
                    .map(|(w, v)| w * v * v)
                    .sum::<f64>()
            })
            .sum())
    }

    fn check_shape(&self, f: &PolarFunction) -> Result<()> {
        if f.n_theta != self.theta.len() || f.n_fiber != self.fiber.len() {
            return Err(Error::invalid(
                "samples",
                format!(
                    "grid {}x{} does not match model grid {}x{}",
                    f.n_theta,
                    f.n_fiber,
                    self.theta.len(),
                    self.fiber.len()
                ),
            ));
        }
        Ok(())
    }
}

/// Samples `F(θ_i, ξ_j)` on a product grid, stored row-major in `θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarFunction {
    values: Vec<f64>,
    n_theta: usize,
    n_fiber: usize,
}

impl PolarFunction {
    pub fn new(values: Vec<f64>, n_theta: usize, n_fiber: usize) -> Result<Self> {
        if values.len() != n_theta * n_fiber {
            return Err(Error::invalid(
                "samples",
                format!("{} samples for a {n_theta}x{n_fiber} grid", values.len()),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("samples", "samples must be finite"));
        }
        Ok(Self {
            values,
            n_theta,
            n_fiber,
        })
    }

    /// Samples `f(θ, j)` with `j` the fiber node index.
    pub fn from_fn<F: Fn(f64, usize) -> f64>(theta: &[f64], n_fiber: usize, f: F) -> Result<Self> {
        let mut values = Vec::with_capacity(theta.len() * n_fiber);
        for &t in theta {
            for j in 0..n_fiber {
                values.push(f(t, j));
            }
        }
        Self::new(values, theta.len(), n_fiber)
    }

    /// Samples `f(x)` at the ambient points `(cos θ, ξ' sin θ)` of a sphere
    /// model. Needs fiber coordinates.
    pub fn from_ambient<F: Fn(&[f64]) -> f64>(model: &SphereModel, f: F) -> Result<Self> {
        let pts = model
            .fiber()
            .points()
            .ok_or_else(|| Error::invalid("fiber", "fiber basis has no node coordinates"))?;
        Self::from_fn(model.theta_nodes(), pts.len(), |t, j| {
            let mut x = Vec::with_capacity(pts[j].len() + 1);
            x.push(t.cos());
            x.extend(pts[j].iter().map(|c| c * t.sin()));
            f(&x)
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n_theta, self.n_fiber)
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n_fiber..(i + 1) * self.n_fiber]
    }
}

/// Expansion coefficients keyed `(deg, l, k)`.
///
/// `shift` is the spectral shift of the model the keys refer to; the
/// multiplier of degree `deg` is `(deg + shift)²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarmonicCoefficients {
    entries: BTreeMap<(usize, usize, usize), f64>,
    shift: f64,
}

impl HarmonicCoefficients {
    pub fn new(shift: f64) -> Self {
        Self {
            entries: BTreeMap::new(),
            shift,
        }
    }

    pub fn from_entries<I: IntoIterator<Item = ((usize, usize, usize), f64)>>(shift: f64, entries: I) -> Result<Self> {
        let mut out = Self::new(shift);
        for (key, v) in entries {
            out.insert(key, v)?;
        }
        Ok(out)
    }

    pub fn insert(&mut self, key: (usize, usize, usize), value: f64) -> Result<()> {
        if key.1 > key.0 {
            return Err(Error::invalid(
                "key",
                format!("degree {} below slice index {}", key.0, key.1),
            ));
        }
        if !value.is_finite() {
            return Err(Error::invalid("coefficients", "coefficients must be finite"));
        }
        self.entries.insert(key, value);
        Ok(())
    }

    pub fn get(&self, key: (usize, usize, usize)) -> f64 {
        self.entries.get(&key).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize, usize), &f64)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn eigenvalue(&self, deg: usize) -> f64 {
        (deg as f64 + self.shift).powi(2)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.values().map(|v| v * v).sum()
    }

    /// `log Σ (deg+shift)^{4m} |c|²`; `−∞` when every entry vanishes.
    pub fn ln_iterate_norm_sqr(&self, m: usize) -> f64 {
        let terms = self
            .entries
            .iter()
            .filter(|(_, v)| **v != 0.0)
            .map(|(k, v)| 2.0 * v.abs().ln() + 2.0 * m as f64 * self.eigenvalue(k.0).ln());
        log_sum_exp(terms)
    }

    /// Entry `(deg, l, k)` multiplied by `((deg + shift)²)^m`.
    pub fn apply_multiplier(&self, m: usize) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .map(|(&k, &v)| (k, v * self.eigenvalue(k.0).powi(m as i32)))
                .collect(),
            shift: self.shift,
        }
    }
}

pub(crate) fn log_sum_exp(terms: impl Iterator<Item = f64>) -> f64 {
    let terms: Vec<f64> = terms.collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

fn fiber_mode(model: &SphereModel, l: usize, k: usize) -> Result<usize> {
    model
        .fiber
        .mode_index(l, k)
        .ok_or_else(|| Error::invalid("mode", format!("fiber mode (l={l}, k={k}) not in the fiber basis")))
}

/// `S_{deg,l,k}(θ, ξ_j)` at fiber node `j`.
pub fn basis_s(model: &SphereModel, deg: usize, l: usize, k: usize, theta: f64, fiber_node: usize) -> Result<f64> {
    let mode = fiber_mode(model, l, k)?;
    if fiber_node >= model.fiber.len() {
        return Err(Error::invalid("fiber_node", format!("node {fiber_node} out of range")));
    }
    Ok(model.radial_profile(deg, l, theta)? * model.fiber.values()[mode][fiber_node])
}

/// `F_{k,l}(θ_i) = ∫ F(θ_i, ξ') S'_{l,k}(ξ') dσ(ξ')` at every θ-node.
pub fn fiber_project(model: &SphereModel, f: &PolarFunction, l: usize, k: usize) -> Result<Vec<f64>> {
    model.check_shape(f)?;
    let mode = fiber_mode(model, l, k)?;
    Ok((0..f.n_theta).map(|i| model.fiber.project(mode, f.row(i))).collect())
}

/// Blow-up threshold for `(sin θ)^{−l}` division at the extreme nodes.
const SINGULARITY_RATIO: f64 = 1e6;

/// `g_{k,l}(θ) = 2^{l+(q−1)/2} (sin θ)^{−l} F_{k,l}(θ)` at interior nodes.
///
/// With this factor `J_{α,α}(g_{k,l})(n) = (f, S_{n+l,l,k})` for
/// `α = l + q/2 − 1`.
pub fn g_extract(f_kl: &[f64], theta: &[f64], l: usize, q: usize) -> Result<Vec<f64>> {
    if f_kl.len() != theta.len() {
        return Err(Error::invalid("samples", "one sample per theta node required"));
    }
    if let Some(t) = theta.iter().find(|t| !(**t > 0.0 && **t < std::f64::consts::PI)) {
        return Err(Error::Domain(format!(
            "g_extract needs interior nodes, got theta = {t}"
        )));
    }
    let scale = (l as f64 + 0.5 * (q as f64 - 1.0)).exp2();
    let g: Vec<f64> = f_kl
        .iter()
        .zip(theta)
        .map(|(f, t)| scale * f / t.sin().powi(l as i32))
        .collect();
    check_blow_up(&g, theta, l)?;
    Ok(g)
}

pub(crate) fn check_blow_up(g: &[f64], theta: &[f64], l: usize) -> Result<()> {
    if l == 0 || g.len() < 3 {
        return Ok(());
    }
    let mut mags: Vec<f64> = g.iter().map(|v| v.abs()).collect();
    mags.sort_by(f64::total_cmp);
    let median = mags[mags.len() / 2];
    // Extreme nodes are those nearest the poles.
    let (lo, hi) = theta.iter().enumerate().fold((0, 0), |(lo, hi), (i, t)| {
        (if *t < theta[lo] { i } else { lo }, if *t > theta[hi] { i } else { hi })
    });
    let extreme = g[lo].abs().max(g[hi].abs());
    if median > 0.0 && extreme > SINGULARITY_RATIO * median {
        return Err(Error::Singularity {
            mode: l,
            ratio: extreme / median,
        });
    }
    Ok(())
}

/// Coefficients `(f, S_{deg,l,k})` for every fiber mode and `deg ≤ deg_max`.
pub fn sphere_decompose(model: &SphereModel, f: &PolarFunction) -> Result<HarmonicCoefficients> {
    model.check_shape(f)?;
    let q = model.q;
    let deg_max = model.deg_max;
    let slices: Vec<Result<Vec<Entry>>> = model
        .fiber
        .modes()
        .par_iter()
        .map(|&(l, k)| {
            if l > deg_max {
                return Ok(Vec::new());
            }
            let f_kl = fiber_project(model, f, l, k)?;
            let g = g_extract(&f_kl, &model.theta, l, q)?;
            let alpha = l as f64 + 0.5 * q as f64 - 1.0;
            let analyzer = JacobiAnalyzer::with_rule(CpJacobiParams::new(alpha, alpha)?, model.rule.clone())?;
            let top = deg_max - l;
            let c = analyzer.coefficients(&g, top, top)?;
            Ok(c.values()
                .iter()
                .enumerate()
                .map(|(n, &v)| ((n + l, l, k), v))
                .collect())
        })
        .collect();
    let mut out = HarmonicCoefficients::new(model.shift());
    for slice in slices {
        for (key, v) in slice? {
            out.insert(key, v)?;
        }
    }
    Ok(out)
}

/// `Σ c_{deg,l,k} S_{deg,l,k}` on the model grid.
pub fn sphere_synthesize(model: &SphereModel, c: &HarmonicCoefficients) -> Result<PolarFunction> {
    let nf = model.fiber.len();
    let mut values = vec![0.0; model.theta.len() * nf];
    for (&(deg, l, k), &v) in c.iter() {
        if v == 0.0 {
            continue;
        }
        let mode = fiber_mode(model, l, k)?;
        let fib = &model.fiber.values()[mode];
        for (i, &t) in model.theta.iter().enumerate() {
            let r = v * model.radial_profile(deg, l, t)?;
            for (out, s) in values[i * nf..(i + 1) * nf].iter_mut().zip(fib) {
                *out += r * s;
            }
        }
    }
    PolarFunction::new(values, model.theta.len(), nf)
}

/// Spectral action of `Δ^m`: entry `(deg,l,k)` times `((deg+(q−1)/2)²)^m`.
pub fn sphere_apply_delta_spectral(c: &HarmonicCoefficients, q: usize, m: usize) -> HarmonicCoefficients {
    let mut c = c.clone();
    c.shift = 0.5 * (q as f64 - 1.0);
    c.apply_multiplier(m)
}

/// Outcome of a norm-domination comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DominationCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / rhs`, 0 when both vanish.
    pub ratio: f64,
    pub constant: f64,
}

/// `‖𝕃^m_{α,α} g_{l,k}‖` against `(1 + 2l/(q−1))^{2m} ‖Δ^m f‖`, both from
/// coefficients.
pub fn norm_domination_check(
    c: &HarmonicCoefficients,
    q: usize,
    l: usize,
    k: usize,
    m: usize,
) -> Result<DominationCheck> {
    if q < 2 {
        return Err(Error::invalid("q", format!("sphere dimension must be >= 2, got {q}")));
    }
    let qf = q as f64;
    let slice_shift = 0.5 * (2.0 * l as f64 + qf - 1.0);
    let full_shift = 0.5 * (qf - 1.0);
    let two_m = 2.0 * m as f64;
    let lhs_terms = c
        .iter()
        .filter(|((_, ll, kk), v)| *ll == l && *kk == k && **v != 0.0)
        .map(|(&(deg, _, _), v)| 2.0 * v.abs().ln() + 2.0 * two_m * ((deg - l) as f64 + slice_shift).ln());
    let rhs_terms = c
        .iter()
        .filter(|(_, v)| **v != 0.0)
        .map(|(&(deg, _, _), v)| 2.0 * v.abs().ln() + 2.0 * two_m * (deg as f64 + full_shift).ln());
    let constant = (1.0 + 2.0 * l as f64 / (qf - 1.0)).powf(two_m);
    Ok(domination(log_sum_exp(lhs_terms), log_sum_exp(rhs_terms), constant))
}

pub(crate) fn domination(ln_lhs_sq: f64, ln_rhs_sq: f64, constant: f64) -> DominationCheck {
    let ln_lhs = 0.5 * ln_lhs_sq;
    let ln_rhs = 0.5 * ln_rhs_sq + constant.ln();
    let ratio = if ln_lhs == f64::NEG_INFINITY {
        0.0
    } else {
        (ln_lhs - ln_rhs).exp()
    };
    DominationCheck {
        lhs: ln_lhs.exp(),
        rhs: ln_rhs.exp(),
        ratio,
        constant,
    }
}

/// Decomposition of an antipodally even function (a function on real
/// projective space lifted to the sphere).
pub fn even_lift_decompose(model: &SphereModel, f: &PolarFunction) -> Result<HarmonicCoefficients> {
    model.check_shape(f)?;
    let scale = f.values.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    let tol = 1e-10 * scale;
    match model.fiber.antipode() {
        Some(anti) => {
            let nt = f.n_theta;
            for i in 0..nt {
                let mirror = f.row(nt - 1 - i);
                for (j, &a) in anti.iter().enumerate() {
                    let d = (f.row(i)[j] - mirror[a]).abs();
                    if d > tol {
                        return Err(Error::invalid(
                            "samples",
                            format!("input is not antipodally even (defect {d:e} at node ({i}, {j}))"),
                        ));
                    }
                }
            }
            sphere_decompose(model, f)
        }
        None => {
            let c = sphere_decompose(model, f)?;
            let odd = c
                .iter()
                .filter(|(k, _)| k.0 % 2 == 1)
                .fold(0.0f64, |m, (_, v)| m.max(v.abs()));
            if odd > tol {
                return Err(Error::invalid(
                    "samples",
                    format!("input has odd-degree content {odd:e}; not antipodally even"),
                ));
            }
            Ok(c)
        }
    }
}
