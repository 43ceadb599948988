//! Quasi-analyticity laboratory.
//!
//! For a function given by its spectral data this module computes the
//! iterate norms `‖Δ^m f‖`, the Carleman partial sums
//! `Σ_{m≤M} ‖Δ^m f‖^{−1/(2m)}` with a growth fit, the Taylor jets of the
//! polar representative at the origin, and a verdict combining the two.

use serde::Serialize;

use crate::compact_jacobi::CoefficientSequence;
use crate::noncompact::{jacobi_function_series, plancherel_density, SpectralDensity};
use crate::series::Series;
use crate::specfun::{ln_gamma, ln_norm_constant_raw};
use crate::sphere::{HarmonicCoefficients, ProjectiveModel, SphereModel};
use crate::{Error, Result};

/// Spectral data of a function in one of the supported models.
#[derive(Debug, Clone, Copy)]
pub enum ChernoffInput<'a> {
    /// Radial function on a noncompact space, by its Jacobi transform.
    Noncompact(&'a SpectralDensity),
    /// Jacobi series on `(0, π)`.
    Compact(&'a CoefficientSequence),
    Sphere(&'a HarmonicCoefficients, &'a SphereModel),
    Projective(&'a HarmonicCoefficients, &'a ProjectiveModel),
}

impl ChernoffInput<'_> {
    fn ln_norm_sqr(&self, m: usize) -> f64 {
        match self {
            Self::Noncompact(g) => g.ln_iterate_norm_sqr(m),
            Self::Compact(c) => c.ln_iterate_norm_sqr(m),
            Self::Sphere(c, model) => with_shift(c, model.shift()).ln_iterate_norm_sqr(m),
            Self::Projective(c, model) => with_shift(c, model.rho()).ln_iterate_norm_sqr(m),
        }
    }
}

fn with_shift(c: &HarmonicCoefficients, shift: f64) -> HarmonicCoefficients {
    if c.shift() == shift {
        return c.clone();
    }
    HarmonicCoefficients::from_entries(shift, c.iter().map(|(k, v)| (*k, *v))).expect("entries already validated")
}

/// `log ‖Δ^m f‖` for `m = 0..=m_max`; `−∞` for a vanishing norm.
pub fn ln_iterate_norms(input: ChernoffInput<'_>, m_max: usize) -> Vec<f64> {
    (0..=m_max).map(|m| 0.5 * input.ln_norm_sqr(m)).collect()
}

/// `‖Δ^m f‖` for `m = 0..=m_max`. May overflow to `inf` for large `m`; the
/// logarithmic form is exact.
pub fn iterate_norms(input: ChernoffInput<'_>, m_max: usize) -> Vec<f64> {
    ln_iterate_norms(input, m_max).into_iter().map(f64::exp).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Divergent,
    Convergent,
    Inconclusive,
    ZeroFunction,
}

/// Carleman sums and the growth of `a_m = ‖Δ^m f‖^{1/(2m)}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarlemanFit {
    /// `a_m` for `m = 1..=M`.
    pub growth: Vec<f64>,
    /// `S_M` for `M = 1..=M`.
    pub partial_sums: Vec<f64>,
    /// Least-squares slope of `log a_m` against `log m` over the top half.
    pub slope: f64,
    /// Extrapolated `lim a_m` from `log a_m ≈ log A + c₁/m + c₂ log m / m`.
    pub limit: f64,
    pub verdict: Verdict,
}

/// Fits the growth of `a_m` from `log ‖Δ^m f‖`, `m = 0..=M`.
pub fn carleman_sum(ln_norms: &[f64], tol_slope: f64) -> CarlemanFit {
    let m_max = ln_norms.len().saturating_sub(1);
    if ln_norms.iter().all(|v| *v == f64::NEG_INFINITY) {
        return CarlemanFit {
            growth: vec![0.0; m_max],
            partial_sums: vec![0.0; m_max],
            slope: f64::NAN,
            limit: 0.0,
            verdict: Verdict::ZeroFunction,
        };
    }
    let ln_a: Vec<f64> = (1..=m_max).map(|m| ln_norms[m] / (2.0 * m as f64)).collect();
    let growth: Vec<f64> = ln_a.iter().map(|v| v.exp()).collect();
    let mut partial_sums = Vec::with_capacity(m_max);
    let mut acc = 0.0;
    for v in &ln_a {
        acc += (-v).exp();
        partial_sums.push(acc);
    }
    // A vanishing iterate of a nonzero function makes the sum infinite.
    if ln_a.contains(&f64::NEG_INFINITY) {
        return CarlemanFit {
            growth,
            partial_sums,
            slope: f64::NAN,
            limit: 0.0,
            verdict: Verdict::Divergent,
        };
    }
    let lo = m_max.div_ceil(2).max(1);
    let pts: Vec<(f64, f64)> = (lo..=m_max).map(|m| ((m as f64).ln(), ln_a[m - 1])).collect();
    let slope = if pts.len() >= 2 { line_slope(&pts) } else { f64::NAN };
    let verdict = if slope.is_nan() {
        Verdict::Inconclusive
    } else if slope < 1.0 - tol_slope {
        Verdict::Divergent
    } else if slope > 1.0 + tol_slope {
        Verdict::Convergent
    } else {
        Verdict::Inconclusive
    };
    CarlemanFit {
        limit: fit_limit(&ln_a),
        growth,
        partial_sums,
        slope,
        verdict,
    }
}

fn line_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn fit_limit(ln_a: &[f64]) -> f64 {
    let m_max = ln_a.len();
    let lo = (m_max / 4).max(2);
    if m_max < lo + 3 {
        return ln_a.last().map_or(0.0, |v| v.exp());
    }
    let mut ata = vec![vec![0.0; 3]; 3];
    let mut atb = vec![0.0; 3];
    for m in lo..=m_max {
        let mf = m as f64;
        let row = [1.0, 1.0 / mf, mf.ln() / mf];
        for i in 0..3 {
            atb[i] += row[i] * ln_a[m - 1];
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
        }
    }
    match solve_dense(ata, atb) {
        Some(x) => x[0].exp(),
        None => ln_a[m_max - 1].exp(),
    }
}

/// Gaussian elimination with partial pivoting.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col] == 0.0 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            let (top, bottom) = a.split_at_mut(r);
            for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= f * y;
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// Derivatives `∂^m F(0)` of one fiber slice, `m = 0..=M_jet`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeJets {
    pub mode: String,
    pub jets: Vec<f64>,
}

/// `Σ_n w_n P_n^{(α,β)}(cos θ)` as a series in `θ`, expanding each
/// polynomial around `x = 1` in `u = 1 − cos θ`.
fn jacobi_sum_series(weights: &[f64], a: f64, b: f64, order: usize) -> Series {
    let k_max = order / 2;
    let s = a + b;
    let mut d = vec![0.0; k_max + 1];
    for (n, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        if n == 0 {
            d[0] += w;
            continue;
        }
        let nf = n as f64;
        let base = ln_gamma(a + nf + 1.0) - ln_gamma(nf + s + 1.0);
        for (k, dk) in d.iter_mut().enumerate().take(k_max.min(n) + 1) {
            let kf = k as f64;
            let ln_c = base + ln_gamma(nf + s + 1.0 + kf)
                - ln_gamma(a + kf + 1.0)
                - ln_gamma(kf + 1.0)
                - ln_gamma(nf - kf + 1.0)
                - kf * std::f64::consts::LN_2;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            *dk += w * sign * ln_c.exp();
        }
    }
    let u = &Series::constant(1.0, order) - &Series::cos_scaled(1.0, order);
    let mut acc = Series::zero(order);
    for &dk in d.iter().rev() {
        acc = &acc * &u;
        acc.add_scaled(&Series::constant(1.0, order), dk);
    }
    acc
}

/// Jets at the origin of each fiber slice of the synthesized function.
///
/// Slices are labelled `"0"` (compact), `"re"`/`"im"` (noncompact; the
/// imaginary part only when present), `"l:k"` (sphere) and `"j:l"`
/// (projective). Jets are derivatives, not Taylor coefficients.
pub fn jet_at_zero(input: ChernoffInput<'_>, m_jet: usize) -> Result<Vec<ModeJets>> {
    match input {
        ChernoffInput::Compact(c) => {
            let p = c.params();
            let w: Vec<f64> = c
                .values()
                .iter()
                .enumerate()
                .map(|(n, v)| v * p.norm_constant(n))
                .collect();
            Ok(vec![ModeJets {
                mode: "0".into(),
                jets: jacobi_sum_series(&w, p.alpha(), p.beta(), m_jet).derivatives(),
            }])
        }
        ChernoffInput::Noncompact(g) => {
            let params = g.params();
            let mut re = Series::zero(m_jet);
            let mut im = Series::zero(m_jet);
            let mut has_im = false;
            for ((&lam, &w), v) in g.grid().nodes().iter().zip(g.grid().weights()).zip(g.values()) {
                if *v == crate::Complex64::new(0.0, 0.0) {
                    continue;
                }
                let scale = w * plancherel_density(lam, params) / (2.0 * std::f64::consts::PI);
                if scale == 0.0 {
                    continue;
                }
                let phi = jacobi_function_series(lam, params, m_jet);
                re.add_scaled(&phi, scale * v.re);
                if v.im != 0.0 {
                    has_im = true;
                    im.add_scaled(&phi, scale * v.im);
                }
            }
            let mut out = vec![ModeJets {
                mode: "re".into(),
                jets: re.derivatives(),
            }];
            if has_im {
                out.push(ModeJets {
                    mode: "im".into(),
                    jets: im.derivatives(),
                });
            }
            Ok(out)
        }
        ChernoffInput::Sphere(c, model) => {
            let q = model.q();
            let mut out = Vec::new();
            for &(l, k) in model.fiber().modes() {
                let alpha = l as f64 + 0.5 * q as f64 - 1.0;
                let lam = l as f64 + 0.5 * (q as f64 - 1.0);
                let top = c
                    .iter()
                    .filter(|(key, _)| key.1 == l && key.2 == k)
                    .map(|(key, _)| key.0)
                    .max();
                let Some(top) = top else {
                    out.push(ModeJets {
                        mode: format!("{l}:{k}"),
                        jets: vec![0.0; m_jet + 1],
                    });
                    continue;
                };
                // a_{n+l,l} C_n^λ = 2^{−λ} C(α,α,n) P_n^{(α,α)}.
                let w: Vec<f64> = (0..=top - l)
                    .map(|n| {
                        c.get((n + l, l, k))
                            * (ln_norm_constant_raw(n, alpha, alpha) - lam * std::f64::consts::LN_2).exp()
                    })
                    .collect();
                let radial = jacobi_sum_series(&w, alpha, alpha, m_jet);
                let slice = &Series::sin_scaled(1.0, m_jet).powi(l) * &radial;
                out.push(ModeJets {
                    mode: format!("{l}:{k}"),
                    jets: slice.derivatives(),
                });
            }
            Ok(out)
        }
        ChernoffInput::Projective(c, model) => {
            let (q, kk) = (model.q(), model.k() as f64);
            let mut out = Vec::new();
            for &(j, l) in model.fiber().modes() {
                let alpha = (q - 1 + 2 * j) as f64;
                let top = c
                    .iter()
                    .filter(|(key, _)| key.1 == j && key.2 == l)
                    .map(|(key, _)| key.0)
                    .max();
                let Some(top) = top else {
                    out.push(ModeJets {
                        mode: format!("{j}:{l}"),
                        jets: vec![0.0; m_jet + 1],
                    });
                    continue;
                };
                let w: Vec<f64> = (0..=top - j)
                    .map(|n| {
                        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                        sign * c.get((n + j, j, l)) * ln_norm_constant_raw(n, alpha, kk).exp()
                    })
                    .collect();
                let radial = jacobi_sum_series(&w, alpha, kk, m_jet);
                // (sin θ/2)^{2j} = ((1 − cos θ)/2)^j.
                let half = (&Series::constant(1.0, m_jet) - &Series::cos_scaled(1.0, m_jet)).scale(0.5);
                let slice = &half.powi(j) * &radial;
                out.push(ModeJets {
                    mode: format!("{j}:{l}"),
                    jets: slice.derivatives(),
                });
            }
            Ok(out)
        }
    }
}

/// Settings for [`chernoff_verdict`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChernoffOptions {
    /// Largest iterate `M`.
    pub m_max: usize,
    /// Largest jet order.
    pub m_jet: usize,
    /// Threshold below which jets and norms count as zero.
    pub tol: f64,
    pub tol_slope: f64,
}

impl Default for ChernoffOptions {
    fn default() -> Self {
        Self {
            m_max: 20,
            m_jet: 8,
            tol: 1e-10,
            tol_slope: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarlemanReport {
    pub options: ChernoffOptions,
    /// `log ‖Δ^m f‖`, `m = 0..=M`.
    pub ln_iterate_norms: Vec<f64>,
    pub iterate_norms: Vec<f64>,
    #[serde(flatten)]
    pub fit: CarlemanFit,
    pub jets: Vec<ModeJets>,
    pub first_nonvanishing_jet: Option<usize>,
    /// `‖Δ^m f‖² ≤ ‖Δ^{m−1} f‖ ‖Δ^{m+1} f‖` for every interior `m`.
    pub log_convex: bool,
    /// `(‖Δ^m f‖/‖f‖)^{1/(2m)}` nondecreasing.
    pub normalized_growth_monotone: bool,
    /// Divergent Carleman sum, all jets below `tol` and `‖f‖ > tol`.
    pub inconsistent: bool,
}

/// Iterate norms, Carleman fit and jets in one report.
pub fn chernoff_verdict(input: ChernoffInput<'_>, options: ChernoffOptions) -> Result<CarlemanReport> {
    if options.m_max < 1 {
        return Err(Error::invalid("M", "need at least one iterate"));
    }
    if !(options.tol >= 0.0 && options.tol_slope > 0.0) {
        return Err(Error::invalid("tol", "tolerances must be nonnegative"));
    }
    let ln_norms = ln_iterate_norms(input, options.m_max);
    let fit = carleman_sum(&ln_norms, options.tol_slope);
    let jets = jet_at_zero(input, options.m_jet)?;
    let first_nonvanishing_jet = (0..=options.m_jet).find(|&m| jets.iter().any(|mj| mj.jets[m].abs() > options.tol));
    let slack = |v: f64| 1e-12 * v.abs().max(1.0);
    let log_convex = ln_norms
        .windows(3)
        .all(|w| w[1] == f64::NEG_INFINITY || 2.0 * w[1] <= w[0] + w[2] + slack(w[1]));
    let ln0 = ln_norms[0];
    let normalized: Vec<f64> = (1..ln_norms.len())
        .map(|m| (ln_norms[m] - ln0) / (2.0 * m as f64))
        .collect();
    let normalized_growth_monotone =
        ln0 == f64::NEG_INFINITY || normalized.windows(2).all(|w| w[1] >= w[0] - slack(w[0]));
    let norm = ln0.exp();
    let inconsistent = fit.verdict == Verdict::Divergent && first_nonvanishing_jet.is_none() && norm > options.tol;
    Ok(CarlemanReport {
        options,
        iterate_norms: ln_norms.iter().map(|v| v.exp()).collect(),
        ln_iterate_norms: ln_norms,
        fit,
        jets,
        first_nonvanishing_jet,
        log_convex,
        normalized_growth_monotone,
        inconsistent,
    })
}

/// Changes the coefficients `n ≤ window` by the least-norm amount that
/// cancels the listed jets of the synthesized function.
pub fn annihilate_jets(c: &CoefficientSequence, orders: &[usize], window: usize) -> Result<CoefficientSequence> {
    let p = *c.params();
    let top = orders.iter().copied().max().unwrap_or(0);
    let window = window.min(c.values().len().saturating_sub(1));
    // jets of each single mode 𝒫_n
    let cols: Vec<Vec<f64>> = (0..=window)
        .map(|n| {
            let mut w = vec![0.0; n + 1];
            w[n] = p.norm_constant(n);
            jacobi_sum_series(&w, p.alpha(), p.beta(), top).derivatives()
        })
        .collect();
    let rows: Vec<(Vec<f64>, f64)> = orders
        .iter()
        .filter_map(|&o| {
            let r: Vec<f64> = cols.iter().map(|col| col[o]).collect();
            let s = r.iter().map(|v| v * v).sum::<f64>().sqrt();
            (s > 0.0).then(|| (r.iter().map(|v| v / s).collect(), s))
        })
        .collect();
    let keep: Vec<usize> = orders
        .iter()
        .copied()
        .filter(|&o| cols.iter().any(|col| col[o] != 0.0))
        .collect();
    let mut values = c.values().to_vec();
    for _ in 0..4 {
        let current = CoefficientSequence::new(values.clone(), p)?;
        let jets = &jet_at_zero(ChernoffInput::Compact(&current), top)?[0].jets;
        let e: Vec<f64> = keep.iter().zip(&rows).map(|(&o, (_, s))| jets[o] / s).collect();
        let gram: Vec<Vec<f64>> = rows
            .iter()
            .map(|(a, _)| {
                rows.iter()
                    .map(|(b, _)| a.iter().zip(b).map(|(x, y)| x * y).sum())
                    .collect()
            })
            .collect();
        let y = solve_dense(gram, e).ok_or_else(|| Error::Domain("jet constraints are degenerate".into()))?;
        for (n, v) in values.iter_mut().enumerate().take(window + 1) {
            *v -= rows.iter().zip(&y).map(|((r, _), yi)| r[n] * yi).sum::<f64>();
        }
    }
    CoefficientSequence::new(values, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compact_jacobi::CpJacobiParams;
    use crate::grid::SampleGrid;
    use crate::noncompact::NcJacobiParams;
    use crate::sphere::a_nl;
    use crate::Complex64;

    #[test]
    fn single_mode_is_constant() {
        let p = CpJacobiParams::new(0.0, 0.0).unwrap();
        let c = CoefficientSequence::unit(3, p);
        let norms = iterate_norms(ChernoffInput::Compact(&c), 10);
        for (m, v) in norms.iter().enumerate() {
            assert!((v - 12.25f64.powi(m as i32)).abs() <= 1e-12 * v);
        }
        let fit = carleman_sum(&ln_iterate_norms(ChernoffInput::Compact(&c), 10), 0.1);
        assert_eq!(fit.verdict, Verdict::Divergent);
        for (m, s) in fit.partial_sums.iter().enumerate() {
            assert!((s - (m + 1) as f64 / 3.5).abs() < 1e-12);
        }
        assert!(fit.growth.iter().all(|a| (a - 3.5).abs() < 1e-12));
    }

    #[test]
    fn zero_function() {
        let p = CpJacobiParams::new(0.5, 0.5).unwrap();
        let c = CoefficientSequence::new(vec![0.0; 4], p).unwrap();
        let r = chernoff_verdict(ChernoffInput::Compact(&c), ChernoffOptions::default()).unwrap();
        assert_eq!(r.fit.verdict, Verdict::ZeroFunction);
        assert!(r.iterate_norms.iter().all(|v| *v == 0.0));
        assert_eq!(r.first_nonvanishing_jet, None);
        assert!(!r.inconsistent);
    }

    #[test]
    fn vanishing_eigenvalue_diverges() {
        let p = CpJacobiParams::new(-0.5, -0.5).unwrap();
        let c = CoefficientSequence::unit(0, p);
        let fit = carleman_sum(&ln_iterate_norms(ChernoffInput::Compact(&c), 5), 0.1);
        assert_eq!(fit.verdict, Verdict::Divergent);
    }

    #[test]
    fn band_limited_noncompact_limit() {
        let params = NcJacobiParams::new(0.5, 0.5).unwrap();
        let grid = SampleGrid::panel_gauss_legendre(0.0, 10.0, 8, 16).unwrap();
        let g = SpectralDensity::from_fn(grid, params, |l| Complex64::new(1.0 + 0.3 * (l * 1.7).sin(), 0.0)).unwrap();
        let r = chernoff_verdict(
            ChernoffInput::Noncompact(&g),
            ChernoffOptions {
                m_max: 40,
                ..Default::default()
            },
        )
        .unwrap();
        let target = (100.0f64 + 4.0).sqrt();
        assert!((r.fit.limit / target - 1.0).abs() < 0.02, "{} vs {target}", r.fit.limit);
        assert_eq!(r.fit.verdict, Verdict::Divergent);
        assert!(r.log_convex && r.normalized_growth_monotone && !r.inconsistent);
        assert_eq!(r.first_nonvanishing_jet, Some(0));
        for (m, v) in r.iterate_norms.iter().enumerate().skip(1) {
            assert!(*v <= 104f64.powi(m as i32) * r.iterate_norms[0] * (1.0 + 1e-12));
        }
    }

    fn gevrey(n_max: usize) -> CoefficientSequence {
        let p = CpJacobiParams::new(0.0, 0.0).unwrap();
        CoefficientSequence::new((0..=n_max).map(|n| (-((n + 1) as f64).sqrt()).exp()).collect(), p).unwrap()
    }

    #[test]
    fn gevrey_converges() {
        let c = gevrey(4000);
        let fit = carleman_sum(&ln_iterate_norms(ChernoffInput::Compact(&c), 12), 0.1);
        assert_eq!(fit.verdict, Verdict::Convergent, "slope {}", fit.slope);
    }

    #[test]
    fn jets_of_cosine_and_constant() {
        let p = CpJacobiParams::new(0.0, 0.0).unwrap();
        // 𝒫_1 = √3 cos θ under (0,0).
        let c = CoefficientSequence::new(vec![0.0, 1.0 / 3f64.sqrt()], p).unwrap();
        let j = &jet_at_zero(ChernoffInput::Compact(&c), 6).unwrap()[0].jets;
        let expect = [1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0];
        for (a, b) in j.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
        let one = CoefficientSequence::new(vec![2.0], p).unwrap();
        let j = &jet_at_zero(ChernoffInput::Compact(&one), 4).unwrap()[0].jets;
        assert!((j[0] - 2.0).abs() < 1e-14 && j[1..].iter().all(|v| *v == 0.0));
    }

    #[test]
    fn jacobi_series_matches_values() {
        let (a, b) = (1.5, -0.5);
        let w = [0.3, -1.0, 0.25, 0.7, -0.1];
        let s = jacobi_sum_series(&w, a, b, 30);
        let t: f64 = 0.3;
        let direct: f64 = w
            .iter()
            .enumerate()
            .map(|(n, c)| c * crate::specfun::jacobi_value(n, a, b, t.cos()))
            .sum();
        let summed: f64 = s.coeffs().iter().enumerate().map(|(k, c)| c * t.powi(k as i32)).sum();
        assert!((direct - summed).abs() < 1e-12);
    }

    #[test]
    fn sphere_jets() {
        let model = SphereModel::new(2, 4).unwrap();
        let c = HarmonicCoefficients::from_entries(0.5, [((1, 1, 1), 1.0)]).unwrap();
        let jets = jet_at_zero(ChernoffInput::Sphere(&c, &model), 6).unwrap();
        let slice = jets.iter().find(|m| m.mode == "1:1").unwrap();
        assert!((slice.jets[1] - a_nl(2, 1, 1).unwrap()).abs() < 1e-12);
        assert!(slice.jets.iter().step_by(2).all(|v| v.abs() < 1e-14));
        assert!(jets
            .iter()
            .filter(|m| m.mode != "1:1")
            .all(|m| m.jets.iter().all(|v| *v == 0.0)));

        // F = cos θ on the zonal slice.
        let c = HarmonicCoefficients::from_entries(0.5, [((1, 0, 1), 1.0 / a_nl(2, 1, 0).unwrap())]).unwrap();
        let jets = jet_at_zero(ChernoffInput::Sphere(&c, &model), 4).unwrap();
        let z = &jets.iter().find(|m| m.mode == "0:1").unwrap().jets;
        assert!((z[0] - 1.0).abs() < 1e-12 && z[1].abs() < 1e-14 && (z[2] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn projective_jets_match_profile() {
        use crate::sphere::ProjectiveFamily;
        let model = ProjectiveModel::new(ProjectiveFamily::Complex, 3, 3).unwrap();
        let c = HarmonicCoefficients::from_entries(model.rho(), [((3, 1, 2), 1.0), ((2, 1, 2), -0.4)]).unwrap();
        let jets = jet_at_zero(ChernoffInput::Projective(&c, &model), 12).unwrap();
        let slice = &jets.iter().find(|m| m.mode == "1:2").unwrap().jets;
        let t: f64 = 0.2;
        let mut fact = 1.0;
        let mut series = 0.0;
        for (k, d) in slice.iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            series += d / fact * t.powi(k as i32);
        }
        let direct = model.radial_profile(3, 1, t).unwrap() - 0.4 * model.radial_profile(2, 1, t).unwrap();
        assert!((series - direct).abs() < 1e-10);
        assert!(slice[0].abs() < 1e-14 && slice[1].abs() < 1e-14 && slice[2].abs() > 1e-3);
    }

    #[test]
    fn noncompact_jets_are_even() {
        let params = NcJacobiParams::new(1.5, 0.5).unwrap();
        let grid = SampleGrid::panel_gauss_legendre(0.0, 6.0, 4, 16).unwrap();
        let g = SpectralDensity::from_fn(grid, params, |l| Complex64::new((-l * l / 4.0).exp(), 0.0)).unwrap();
        let jets = jet_at_zero(ChernoffInput::Noncompact(&g), 6).unwrap();
        assert_eq!(jets.len(), 1);
        assert!(jets[0].jets[0] > 0.0);
        assert!(jets[0].jets.iter().skip(1).step_by(2).all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn jet_annihilation_keeps_convergence() {
        let c = gevrey(4000);
        let before = jet_at_zero(ChernoffInput::Compact(&c), 6).unwrap()[0].jets.clone();
        let tuned = annihilate_jets(&c, &[0, 2, 4, 6], 60).unwrap();
        assert!(tuned.values()[61..] == c.values()[61..]);
        let r = chernoff_verdict(
            ChernoffInput::Compact(&tuned),
            ChernoffOptions {
                m_max: 12,
                m_jet: 6,
                ..Default::default()
            },
        )
        .unwrap();
        for (a, b) in r.jets[0].jets.iter().zip(&before) {
            assert!(a.abs() <= 1e-12 * b.abs(), "{a} vs {b}");
        }
        assert_eq!(r.fit.verdict, Verdict::Convergent);
        assert!(!r.inconsistent);
    }
}
