//! Compact rank-one projective spaces on the polar model `Ω₀ = (0, π) × S^q`.
//!
//! The measure is `dω = w̃_{q−1,k}(θ) dθ dσ_q` with `dσ_q` normalized and
//! the basis is
//!
//! ```text
//! Q_{N,j,l} = b (sin θ/2)^{2j} (−1)^{N−j} P_{N−j}^{(q−1+2j, k)}(cos θ) S_{j,l}(ξ)
//! ```
//!
//! with `b = C(q−1+2j, k, N−j)`. `Λ_S` acts on degree `N` by `(N + (q+k)/2)²`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fiber::FiberBasis;
use super::harmonics::{
    check_blow_up, domination, log_sum_exp, DominationCheck, Entry, HarmonicCoefficients, PolarFunction,
};
use crate::compact_jacobi::{CpJacobiParams, JacobiAnalyzer};
use crate::specfun::{gauss_jacobi_rule, jacobi_value, ln_norm_constant_raw, QuadratureRule};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjectiveFamily {
    Real,
    Complex,
    Quaternion,
    Cayley,
}

impl FromStr for ProjectiveFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "real" => Ok(Self::Real),
            "complex" => Ok(Self::Complex),
            "quaternion" => Ok(Self::Quaternion),
            "cayley" | "octonion" => Ok(Self::Cayley),
            other => Err(Error::invalid("family", format!("unknown projective family {other:?}"))),
        }
    }
}

impl fmt::Display for ProjectiveFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Real => "real",
            Self::Complex => "complex",
            Self::Quaternion => "quaternion",
            Self::Cayley => "cayley",
        })
    }
}

/// `(q, k)` of a family at size `l`.
pub fn family_qk(family: ProjectiveFamily, l: usize) -> Result<(usize, usize)> {
    let li = l as i64;
    let (q, k) = match family {
        ProjectiveFamily::Real => {
            return Err(Error::invalid(
                "family",
                "real projective space has no Ω₀ model here; use the even lift on the sphere",
            ))
        }
        ProjectiveFamily::Complex => (2, li - 2),
        ProjectiveFamily::Quaternion => (4, 2 * li - 3),
        ProjectiveFamily::Cayley => {
            if l != 2 {
                return Err(Error::invalid("l", format!("the Cayley plane has l = 2, got {l}")));
            }
            (8, 3)
        }
    };
    if k < 0 {
        return Err(Error::invalid(
            "l",
            format!("{family} family needs k >= 0, got k = {k} at l = {l}"),
        ));
    }
    Ok((q, k as usize))
}

/// Polar model of a projective space, truncated at total degree `deg_max`.
#[derive(Debug, Clone)]
pub struct ProjectiveModel {
    family: ProjectiveFamily,
    l: usize,
    q: usize,
    k: usize,
    deg_max: usize,
    rule: QuadratureRule,
    theta: Vec<f64>,
    theta_weights: Vec<f64>,
    fiber: FiberBasis,
}

impl ProjectiveModel {
    pub fn new(family: ProjectiveFamily, l: usize, deg_max: usize) -> Result<Self> {
        let (q, k) = family_qk(family, l)?;
        let fiber = FiberBasis::sphere(q, deg_max)?;
        let rule = gauss_jacobi_rule(deg_max + 1, q as f64 - 1.0, k as f64)?;
        let theta = rule.nodes().iter().map(|x| x.acos()).collect();
        let scale = (-((q + k) as f64)).exp2();
        let theta_weights = rule.weights().iter().map(|w| w * scale).collect();
        Ok(Self {
            family,
            l,
            q,
            k,
            deg_max,
            rule,
            theta,
            theta_weights,
            fiber,
        })
    }

    pub fn family(&self) -> ProjectiveFamily {
        self.family
    }

    pub fn size(&self) -> usize {
        self.l
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn deg_max(&self) -> usize {
        self.deg_max
    }

    /// `ρ_S = (k + q)/2`.
    pub fn rho(&self) -> f64 {
        0.5 * (self.k + self.q) as f64
    }

    pub fn theta_nodes(&self) -> &[f64] {
        &self.theta
    }

    /// Weights for `w̃_{q−1,k}(θ) dθ` at the θ-nodes.
    pub fn theta_weights(&self) -> &[f64] {
        &self.theta_weights
    }

    pub fn fiber(&self) -> &FiberBasis {
        &self.fiber
    }

    pub fn norm_sqr(&self, f: &PolarFunction) -> Result<f64> {
        self.check_shape(f)?;
        Ok(self
            .theta_weights
            .iter()
            .enumerate()
            .map(|(i, wt)| {
                wt * self
                    .fiber
                    .weights()
                    .iter()
                    .zip(f.row(i))
                    .map(|(w, v)| w * v * v)
                    .sum::<f64>()
            })
            .sum())
    }

    fn check_shape(&self, f: &PolarFunction) -> Result<()> {
        if f.shape() != (self.theta.len(), self.fiber.len()) {
            return Err(Error::invalid(
                "samples",
                format!(
                    "grid {:?} does not match model grid {}x{}",
                    f.shape(),
                    self.theta.len(),
                    self.fiber.len()
                ),
            ));
        }
        Ok(())
    }

    fn fiber_mode(&self, j: usize, l_idx: usize) -> Result<usize> {
        self.fiber
            .mode_index(j, l_idx)
            .ok_or_else(|| Error::invalid("mode", format!("fiber mode (j={j}, l={l_idx}) not in the fiber basis")))
    }

    /// θ-profile `b (sin θ/2)^{2j} (−1)^{N−j} P_{N−j}^{(q−1+2j,k)}(cos θ)`.
    pub fn radial_profile(&self, deg: usize, j: usize, theta: f64) -> Result<f64> {
        if j > deg {
            return Err(Error::invalid("j", format!("need N >= j, got N={deg}, j={j}")));
        }
        let n = deg - j;
        let a = (self.q - 1 + 2 * j) as f64;
        let b = self.k as f64;
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        let half = (0.5 * theta).sin();
        Ok(sign * ln_norm_constant_raw(n, a, b).exp() * half.powi(2 * j as i32) * jacobi_value(n, a, b, theta.cos()))
    }

    /// θ-profile in the printed form `b (sin θ/2)^{2j} P_{N−j}^{(k,q−1+2j)}(2 sin²(θ/2) − 1)`.
    pub fn radial_profile_printed(&self, deg: usize, j: usize, theta: f64) -> Result<f64> {
        if j > deg {
            return Err(Error::invalid("j", format!("need N >= j, got N={deg}, j={j}")));
        }
        let n = deg - j;
        let a = (self.q - 1 + 2 * j) as f64;
        let b = self.k as f64;
        let half = (0.5 * theta).sin();
        let x = 2.0 * half * half - 1.0;
        Ok(ln_norm_constant_raw(n, a, b).exp() * half.powi(2 * j as i32) * jacobi_value(n, b, a, x))
    }
}

/// `Q_{N,j,l}(θ, ξ_node)`.
pub fn projective_basis_q(
    model: &ProjectiveModel,
    deg: usize,
    j: usize,
    l_idx: usize,
    theta: f64,
    fiber_node: usize,
) -> Result<f64> {
    let mode = model.fiber_mode(j, l_idx)?;
    if fiber_node >= model.fiber.len() {
        return Err(Error::invalid("fiber_node", format!("node {fiber_node} out of range")));
    }
    Ok(model.radial_profile(deg, j, theta)? * model.fiber.values()[mode][fiber_node])
}

/// Coefficients `(F, Q_{N,j,l})` keyed `(N, j, l)` for `N ≤ deg_max`.
///
/// Each is `(−1)^{N−j} 𝒥_{q−1+2j,k}(g_{j,l})(N−j)` with
/// `g_{j,l} = (sin θ/2)^{−2j} F_{j,l}`.
pub fn projective_decompose(model: &ProjectiveModel, f: &PolarFunction) -> Result<HarmonicCoefficients> {
    model.check_shape(f)?;
    let deg_max = model.deg_max;
    let slices: Vec<Result<Vec<Entry>>> = model
        .fiber
        .modes()
        .par_iter()
        .enumerate()
        .map(|(mode, &(j, l_idx))| {
            if j > deg_max {
                return Ok(Vec::new());
            }
            let g: Vec<f64> = model
                .theta
                .iter()
                .enumerate()
                .map(|(i, t)| model.fiber.project(mode, f.row(i)) / (0.5 * t).sin().powi(2 * j as i32))
                .collect();
            check_blow_up(&g, &model.theta, j)?;
            let params = CpJacobiParams::new((model.q - 1 + 2 * j) as f64, model.k as f64)?;
            let analyzer = JacobiAnalyzer::with_rule(params, model.rule.clone())?;
            let top = deg_max - j;
            let c = analyzer.coefficients(&g, top, top)?;
            Ok(c.values()
                .iter()
                .enumerate()
                .map(|(n, &v)| ((n + j, j, l_idx), if n % 2 == 0 { v } else { -v }))
                .collect())
        })
        .collect();
    let mut out = HarmonicCoefficients::new(model.rho());
    for slice in slices {
        for (key, v) in slice? {
            out.insert(key, v)?;
        }
    }
    Ok(out)
}

/// `Σ c_{N,j,l} Q_{N,j,l}` on the model grid.
pub fn projective_synthesize(model: &ProjectiveModel, c: &HarmonicCoefficients) -> Result<PolarFunction> {
    let nf = model.fiber.len();
    let mut values = vec![0.0; model.theta.len() * nf];
    for (&(deg, j, l_idx), &v) in c.iter() {
        if v == 0.0 {
            continue;
        }
        let fib = &model.fiber.values()[model.fiber_mode(j, l_idx)?];
        for (i, &t) in model.theta.iter().enumerate() {
            let r = v * model.radial_profile(deg, j, t)?;
            for (out, s) in values[i * nf..(i + 1) * nf].iter_mut().zip(fib) {
                *out += r * s;
            }
        }
    }
    PolarFunction::new(values, model.theta.len(), nf)
}

/// Spectral action of `Λ_S^m`: degree `N` times `((N + (q+k)/2)²)^m`.
pub fn projective_apply_lambda_spectral(
    c: &HarmonicCoefficients,
    model: &ProjectiveModel,
    m: usize,
) -> HarmonicCoefficients {
    let mut c = c.clone();
    if c.shift() != model.rho() {
        c = HarmonicCoefficients::from_entries(model.rho(), c.iter().map(|(k, v)| (*k, *v)))
            .expect("entries already validated");
    }
    c.apply_multiplier(m)
}

/// `‖𝕃^m_{q−1+2j,k} g_{j,l}‖` against `‖Λ_S^m F‖`. The slice multiplier
/// `(N−j + (q+2j+k)/2)²` equals the full one, so the constant is 1.
pub fn projective_domination_check(
    c: &HarmonicCoefficients,
    model: &ProjectiveModel,
    j: usize,
    l_idx: usize,
    m: usize,
) -> DominationCheck {
    let rho = model.rho();
    let slice_shift = 0.5 * (model.q + 2 * j + model.k) as f64;
    let two_m = 2.0 * m as f64;
    let lhs = c
        .iter()
        .filter(|((deg, jj, ll), v)| *jj == j && *ll == l_idx && *deg >= j && **v != 0.0)
        .map(|(&(deg, _, _), v)| 2.0 * v.abs().ln() + 2.0 * two_m * ((deg - j) as f64 + slice_shift).ln());
    let rhs = c
        .iter()
        .filter(|(_, v)| **v != 0.0)
        .map(|(&(deg, _, _), v)| 2.0 * v.abs().ln() + 2.0 * two_m * (deg as f64 + rho).ln());
    domination(log_sum_exp(lhs), log_sum_exp(rhs), 1.0)
}
