//! Deterministic synthetic inputs.
//!
//! Random kinds draw uniform values on `[−1, 1]` from a ChaCha8 stream seeded
//! with the configured seed, in the fixed key order of each model.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rankone::compact_jacobi::{CoefficientSequence, CpJacobiParams, JacobiAnalyzer};
use rankone::grid::SampleGrid;
use rankone::noncompact::{NcJacobiParams, SpectralDensity};
use rankone::sphere::{
    projective_decompose, sphere_decompose, HarmonicCoefficients, PolarFunction, ProjectiveModel, SphereModel,
};
use rankone::{Complex64, Result};

use crate::config::SyntheticKind;

/// Settings shared by all generators.
#[derive(Debug, Clone)]
pub struct SynthSpec {
    pub kind: SyntheticKind,
    pub seed: u64,
    pub mode: usize,
    pub gevrey_s: f64,
    pub poly: Vec<f64>,
    pub width: f64,
}

impl SynthSpec {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn gevrey(&self, n: usize) -> f64 {
        (-((n + 1) as f64).powf(self.gevrey_s)).exp()
    }
}

fn horner(poly: &[f64], x: f64) -> f64 {
    poly.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Unsupported kind for a model.
fn unsupported(kind: SyntheticKind, model: &str) -> rankone::Error {
    rankone::Error::InvalidArgument {
        field: "kind",
        reason: format!("{kind:?} input is not available for the {model} model"),
    }
}

/// Jacobi coefficients `c_0..=c_N`.
pub fn compact_input(spec: &SynthSpec, params: CpJacobiParams, n_max: usize) -> Result<CoefficientSequence> {
    let values = match spec.kind {
        SyntheticKind::BandLimitedRandom => {
            let mut rng = spec.rng();
            (0..=n_max).map(|_| rng.gen_range(-1.0..=1.0)).collect()
        }
        SyntheticKind::SingleMode => {
            let mut v = vec![0.0; n_max.max(spec.mode) + 1];
            v[spec.mode] = 1.0;
            v
        }
        SyntheticKind::GevreyDecay => (0..=n_max).map(|n| spec.gevrey(n)).collect(),
        SyntheticKind::ZonalPolynomial => {
            let deg = spec.poly.len().saturating_sub(1);
            let analyzer = JacobiAnalyzer::new(params, deg + 1)?;
            let samples: Vec<f64> = analyzer
                .theta_nodes()
                .iter()
                .map(|t| horner(&spec.poly, t.cos()))
                .collect();
            let mut v = analyzer.coefficients(&samples, deg, deg)?.values().to_vec();
            v.resize(n_max.max(deg) + 1, 0.0);
            v
        }
    };
    CoefficientSequence::new(values, params)
}

/// Spectral density on `grid` (real valued).
pub fn noncompact_input(spec: &SynthSpec, params: NcJacobiParams, grid: SampleGrid) -> Result<SpectralDensity> {
    match spec.kind {
        SyntheticKind::BandLimitedRandom => {
            let mut rng = spec.rng();
            let values = (0..grid.len())
                .map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), 0.0))
                .collect();
            SpectralDensity::new(grid, values, params)
        }
        SyntheticKind::SingleMode => {
            let center = spec.mode as f64;
            let w = spec.width;
            SpectralDensity::from_fn(grid, params, |l| {
                Complex64::new((-((l - center) / w).powi(2)).exp(), 0.0)
            })
        }
        SyntheticKind::GevreyDecay => {
            let s = spec.gevrey_s;
            SpectralDensity::from_fn(grid, params, |l| Complex64::new((-(1.0 + l).powf(s)).exp(), 0.0))
        }
        SyntheticKind::ZonalPolynomial => Err(unsupported(spec.kind, "noncompact")),
    }
}

/// Coefficients `(deg, l, k)` for every fiber mode and `deg ≤ deg_max`.
pub fn sphere_input(spec: &SynthSpec, model: &SphereModel) -> Result<HarmonicCoefficients> {
    let deg_max = model.deg_max();
    match spec.kind {
        SyntheticKind::ZonalPolynomial => {
            let f = PolarFunction::from_ambient(model, |x| horner(&spec.poly, x[0]))?;
            sphere_decompose(model, &f)
        }
        _ => {
            let keys: Vec<(usize, usize, usize)> = model
                .fiber()
                .modes()
                .iter()
                .flat_map(|&(l, k)| (l..=deg_max).map(move |d| (d, l, k)))
                .collect();
            build(spec, model.shift(), keys)
        }
    }
}

/// Coefficients `(N, j, l)` on a projective model.
pub fn projective_input(spec: &SynthSpec, model: &ProjectiveModel) -> Result<HarmonicCoefficients> {
    let deg_max = model.deg_max();
    match spec.kind {
        SyntheticKind::ZonalPolynomial => {
            let f = PolarFunction::from_fn(model.theta_nodes(), model.fiber().len(), |t, _| {
                horner(&spec.poly, t.cos())
            })?;
            projective_decompose(model, &f)
        }
        _ => {
            let keys: Vec<(usize, usize, usize)> = model
                .fiber()
                .modes()
                .iter()
                .flat_map(|&(j, l)| (j..=deg_max).map(move |d| (d, j, l)))
                .collect();
            build(spec, model.rho(), keys)
        }
    }
}

/// Antipodally even coefficients on a sphere (odd degrees dropped).
pub fn even_input(spec: &SynthSpec, model: &SphereModel) -> Result<HarmonicCoefficients> {
    let c = sphere_input(spec, model)?;
    HarmonicCoefficients::from_entries(c.shift(), c.iter().filter(|(k, _)| k.0 % 2 == 0).map(|(k, v)| (*k, *v)))
}

fn build(spec: &SynthSpec, shift: f64, mut keys: Vec<(usize, usize, usize)>) -> Result<HarmonicCoefficients> {
    keys.sort_unstable();
    let mut rng = spec.rng();
    let entries: Vec<_> = match spec.kind {
        SyntheticKind::BandLimitedRandom => keys.into_iter().map(|k| (k, rng.gen_range(-1.0..=1.0))).collect(),
        SyntheticKind::SingleMode => {
            let key = keys
                .into_iter()
                .find(|k| k.0 == spec.mode)
                .ok_or_else(|| rankone::Error::InvalidArgument {
                    field: "mode",
                    reason: format!("degree {} is not available on this model", spec.mode),
                })?;
            vec![(key, 1.0)]
        }
        SyntheticKind::GevreyDecay => keys.into_iter().map(|k| (k, spec.gevrey(k.0))).collect(),
        SyntheticKind::ZonalPolynomial => unreachable!("handled by the callers"),
    };
    HarmonicCoefficients::from_entries(shift, entries)
}
