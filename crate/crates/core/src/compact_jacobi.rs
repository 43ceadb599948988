//! Jacobi trigonometric polynomial analysis on `(0, π)`.
//!
//! `𝒫_n(θ) = C(α,β,n) P_n^{(α,β)}(cos θ)` is orthonormal for
//! `w̃(θ) dθ = (sin θ/2)^{2α+1} (cos θ/2)^{2β+1} dθ`, which becomes
//! `2^{−(α+β+1)} (1−x)^α (1+x)^β dx` under `x = cos θ`. Coefficient
//! integrals are Gauss–Jacobi sums in `x`.

use serde::{Deserialize, Serialize};

use crate::specfun::{check_jacobi_type, gauss_jacobi_rule, jacobi_poly_all, ln_norm_constant_raw, QuadratureRule};
use crate::{Error, Result};

/// Jacobi type `(α, β)` on `(0, π)`, both `> −1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CpJacobiParams {
    alpha: f64,
    beta: f64,
}

impl CpJacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        check_jacobi_type(alpha, beta)?;
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `(α + β + 1)/2`.
    pub fn shift(&self) -> f64 {
        0.5 * (self.alpha + self.beta + 1.0)
    }

    /// Eigenvalue `μ_n = (n + shift)²` of `𝕃_{α,β}` on `𝒫_n`.
    pub fn eigenvalue(&self, n: usize) -> f64 {
        (n as f64 + self.shift()).powi(2)
    }

    /// `C(α,β,n)`.
    pub fn norm_constant(&self, n: usize) -> f64 {
        ln_norm_constant_raw(n, self.alpha, self.beta).exp()
    }
}

/// Expansion coefficients `c_0, …, c_N` in the `𝒫_n` basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSequence {
    values: Vec<f64>,
    params: CpJacobiParams,
}

impl CoefficientSequence {
    pub fn new(values: Vec<f64>, params: CpJacobiParams) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("coefficients", "coefficients must be finite"));
        }
        Ok(Self { values, params })
    }

    /// Unit coefficient at degree `n`.
    pub fn unit(n: usize, params: CpJacobiParams) -> Self {
        let mut values = vec![0.0; n + 1];
        values[n] = 1.0;
        Self { values, params }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn params(&self) -> &CpJacobiParams {
        &self.params
    }

    /// Largest stored degree; `None` when empty.
    pub fn degree(&self) -> Option<usize> {
        self.values.len().checked_sub(1)
    }

    /// `Σ |c_n|²`, the squared `L²(w̃)` norm of the synthesized function.
    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|c| c * c).sum()
    }

    /// `log ‖𝕃^m f‖² = log Σ μ_n^{2m} |c_n|²`, overflow-free. `−∞` for zero data.
    pub fn ln_iterate_norm_sqr(&self, m: usize) -> f64 {
        let terms: Vec<f64> = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(n, c)| {
                let mult = if m == 0 {
                    0.0
                } else {
                    2.0 * m as f64 * self.params.eigenvalue(n).ln()
                };
                2.0 * c.abs().ln() + mult
            })
            .collect();
        let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if max == f64::NEG_INFINITY {
            return max;
        }
        max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
    }
}

/// `w̃_{α,β}(θ)` for `θ ∈ (0, π)`.
pub fn trig_weight(theta: f64, params: &CpJacobiParams) -> Result<f64> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::Domain(format!(
            "trig_weight needs theta in (0, pi), got {theta}"
        )));
    }
    let h = 0.5 * theta;
    Ok(h.sin().powf(2.0 * params.alpha + 1.0) * h.cos().powf(2.0 * params.beta + 1.0))
}

/// `𝒫_0(θ), …, 𝒫_{n_max}(θ)`.
pub fn jacobi_trig_all(n_max: usize, params: &CpJacobiParams, theta: f64) -> Vec<f64> {
    let mut p = jacobi_poly_all(n_max, params.alpha, params.beta, theta.cos());
    for (n, v) in p.iter_mut().enumerate() {
        *v *= params.norm_constant(n);
    }
    p
}

/// Coefficient analyzer for samples on a Gauss–Jacobi grid.
///
/// The base rule integrates against `(1−x)^a (1+x)^b` with `α − a` and
/// `β − b` nonnegative integers; the missing powers are applied as explicit
/// polynomial factors so coefficients stay exact for polynomial data.
#[derive(Debug, Clone)]
pub struct JacobiAnalyzer {
    params: CpJacobiParams,
    rule: QuadratureRule,
    extra: (u32, u32),
    /// Quadrature weight times `2^{−(α+β+1)}(1−x)^{α−a}(1+x)^{β−b}` per node.
    node_weights: Vec<f64>,
    theta: Vec<f64>,
}

impl JacobiAnalyzer {
    /// Analyzer whose grid is the `order`-point rule for `(α, β)` itself.
    pub fn new(params: CpJacobiParams, order: usize) -> Result<Self> {
        let rule = gauss_jacobi_rule(order, params.alpha, params.beta)?;
        Self::with_rule(params, rule)
    }

    /// Analyzer reusing an existing base rule.
    pub fn with_rule(params: CpJacobiParams, rule: QuadratureRule) -> Result<Self> {
        let extra = |target: f64, base: f64, field: &'static str| -> Result<u32> {
            let d = target - base;
            let k = d.round();
            if (d - k).abs() > 1e-12 || k < 0.0 {
                return Err(Error::invalid(
                    field,
                    format!("target exponent {target} minus base exponent {base} must be a nonnegative integer"),
                ));
            }
            Ok(k as u32)
        };
        let extra = (
            extra(params.alpha, rule.alpha(), "alpha")?,
            extra(params.beta, rule.beta(), "beta")?,
        );
        let scale = (-(params.alpha + params.beta + 1.0) * std::f64::consts::LN_2).exp();
        let node_weights = rule
            .nodes()
            .iter()
            .zip(rule.weights())
            .map(|(&x, &w)| w * scale * (1.0 - x).powi(extra.0 as i32) * (1.0 + x).powi(extra.1 as i32))
            .collect();
        let theta = rule.nodes().iter().map(|x| x.acos()).collect();
        Ok(Self {
            params,
            rule,
            extra,
            node_weights,
            theta,
        })
    }

    pub fn params(&self) -> &CpJacobiParams {
        &self.params
    }

    pub fn order(&self) -> usize {
        self.rule.order()
    }

    /// `θ_i = arccos x_i`, in the order of the rule's nodes (decreasing θ).
    pub fn theta_nodes(&self) -> &[f64] {
        &self.theta
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    /// Integrates `f w̃_{α,β} dθ` from samples at the nodes.
    pub fn integrate(&self, samples: &[f64]) -> f64 {
        self.node_weights.iter().zip(samples).map(|(w, f)| w * f).sum()
    }

    fn check_exact(&self, degree: usize) -> Result<()> {
        let need_degree = degree + (self.extra.0 + self.extra.1) as usize;
        let need = need_degree / 2 + 1;
        if need > self.order() {
            return Err(Error::InsufficientQuadrature {
                have: self.order(),
                need,
            });
        }
        Ok(())
    }

    fn check_len(&self, samples: &[f64]) -> Result<()> {
        if samples.len() != self.order() {
            return Err(Error::invalid(
                "samples",
                format!("{} samples for a {}-point rule", samples.len(), self.order()),
            ));
        }
        Ok(())
    }

    /// `𝒥f(n) = ∫ f 𝒫_n w̃ dθ` for `f` a polynomial of degree at most
    /// `data_degree` in `cos θ`.
    pub fn coeff(&self, samples: &[f64], n: usize, data_degree: usize) -> Result<f64> {
        self.check_len(samples)?;
        self.check_exact(data_degree + n)?;
        let c = self.params.norm_constant(n);
        let (a, b) = (self.params.alpha, self.params.beta);
        Ok(self
            .rule
            .nodes()
            .iter()
            .zip(&self.node_weights)
            .zip(samples)
            .map(|((&x, &w), &f)| w * f * c * jacobi_poly_all(n, a, b, x)[n])
            .sum())
    }

    /// Coefficients `0..=n_max` in one pass over the nodes.
    pub fn coefficients(&self, samples: &[f64], n_max: usize, data_degree: usize) -> Result<CoefficientSequence> {
        self.check_len(samples)?;
        self.check_exact(data_degree + n_max)?;
        let mut out = vec![0.0; n_max + 1];
        for ((&theta, &w), &f) in self.theta.iter().zip(&self.node_weights).zip(samples) {
            if f == 0.0 {
                continue;
            }
            for (c, p) in out.iter_mut().zip(jacobi_trig_all(n_max, &self.params, theta)) {
                *c += w * f * p;
            }
        }
        CoefficientSequence::new(out, self.params)
    }

    /// `| ∫|f|² w̃ dθ − Σ_{n ≤ N} |𝒥f(n)|² |` for `f` of degree at most `N`.
    pub fn plancherel_defect(&self, samples: &[f64], n_trunc: usize) -> Result<f64> {
        self.check_exact(2 * n_trunc)?;
        let sq: Vec<f64> = samples.iter().map(|f| f * f).collect();
        let lhs = self.integrate(&sq);
        let rhs = self.coefficients(samples, n_trunc, n_trunc)?.norm_sqr();
        Ok((lhs - rhs).abs())
    }
}

/// `𝒥f(n)` from samples at the nodes of the `samples.len()`-point rule for
/// `(α, β)`.
pub fn coeff(samples: &[f64], n: usize, data_degree: usize, params: &CpJacobiParams) -> Result<f64> {
    JacobiAnalyzer::new(*params, samples.len())?.coeff(samples, n, data_degree)
}

/// Plancherel defect from samples at the nodes of the matching rule.
pub fn plancherel_defect(samples: &[f64], n_trunc: usize, params: &CpJacobiParams) -> Result<f64> {
    JacobiAnalyzer::new(*params, samples.len())?.plancherel_defect(samples, n_trunc)
}

/// `Σ_n c_n 𝒫_n(θ)` on a θ-grid.
pub fn synthesize(c: &CoefficientSequence, theta_grid: &[f64]) -> Vec<f64> {
    let Some(n_max) = c.degree() else {
        return vec![0.0; theta_grid.len()];
    };
    theta_grid
        .iter()
        .map(|&t| {
            jacobi_trig_all(n_max, &c.params, t)
                .iter()
                .zip(&c.values)
                .map(|(p, c)| p * c)
                .sum()
        })
        .collect()
}

/// `(f, f_θ, f_θθ)` of the expansion at `θ`, by exact termwise
/// differentiation.
pub fn synthesize_with_derivatives(c: &CoefficientSequence, theta: f64) -> (f64, f64, f64) {
    let Some(n_max) = c.degree() else {
        return (0.0, 0.0, 0.0);
    };
    let (a, b) = (c.params.alpha, c.params.beta);
    let s = a + b;
    let x = theta.cos();
    let sin = theta.sin();
    let p0 = jacobi_poly_all(n_max, a, b, x);
    let p1 = jacobi_poly_all(n_max.saturating_sub(1), a + 1.0, b + 1.0, x);
    let p2 = jacobi_poly_all(n_max.saturating_sub(2), a + 2.0, b + 2.0, x);
    let (mut f, mut df, mut d2f) = (0.0, 0.0, 0.0);
    for (n, &cn) in c.values.iter().enumerate() {
        if cn == 0.0 {
            continue;
        }
        let nf = n as f64;
        let k = cn * c.params.norm_constant(n);
        let dp = if n >= 1 { 0.5 * (nf + s + 1.0) * p1[n - 1] } else { 0.0 };
        let d2p = if n >= 2 {
            0.25 * (nf + s + 1.0) * (nf + s + 2.0) * p2[n - 2]
        } else {
            0.0
        };
        f += k * p0[n];
        df += -k * sin * dp;
        d2f += k * (sin * sin * d2p - x * dp);
    }
    (f, df, d2f)
}

/// `c_n ↦ μ_n^m c_n`.
pub fn apply_lcompact_spectral(c: &CoefficientSequence, m: usize) -> CoefficientSequence {
    let values = c
        .values
        .iter()
        .enumerate()
        .map(|(n, v)| v * c.params.eigenvalue(n).powi(m as i32))
        .collect();
    CoefficientSequence {
        values,
        params: c.params,
    }
}

/// `𝕃f = −f'' − [(α−β+(α+β+1)cos θ)/sin θ] f' + shift² f` on a θ-grid
/// inside `(0, π)`, with derivatives taken termwise from the expansion.
pub fn operator_grid_apply(c: &CoefficientSequence, theta_grid: &[f64]) -> Vec<f64> {
    let p = c.params;
    let shift2 = p.shift().powi(2);
    theta_grid
        .iter()
        .map(|&t| {
            let (f, df, d2f) = synthesize_with_derivatives(c, t);
            let drift = (p.alpha - p.beta + (p.alpha + p.beta + 1.0) * t.cos()) / t.sin();
            -d2f - drift * df + shift2 * f
        })
        .collect()
}
