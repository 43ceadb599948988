//! Run configuration: JSON schema, defaults and validation.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use rankone::compact_jacobi::CpJacobiParams;
use rankone::noncompact::{KTypeIndex, NcJacobiParams};
use rankone::sphere::{family_qk, ProjectiveFamily};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    SpecfunCheck,
    NcTransform,
    NcInvert,
    NcPlancherel,
    NcCratio,
    NcStep2,
    CpCoeffs,
    CpSynth,
    SphereDecompose,
    SphereApply,
    ProjDecompose,
    ChernoffReport,
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_possible_value().expect("no skipped variants");
        f.write_str(v.get_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SyntheticKind {
    BandLimitedRandom,
    SingleMode,
    GevreyDecay,
    ZonalPolynomial,
}

/// Setting for `chernoff-report`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Noncompact,
    Compact,
    Sphere,
    Projective,
}

/// Task parameters. Absent fields take per-task defaults; the resolved
/// block is echoed in every report.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    /// Sphere dimension.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<ProjectiveFamily>,
    /// Projective size parameter.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<SyntheticKind>,
    /// Spectral band limit `Λ` (noncompact).
    #[serde(alias = "Lambda", skip_serializing_if = "Option::is_none")]
    pub band_limit: Option<f64>,
    /// Radial support `R` (noncompact).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support: Option<f64>,
    /// Compact band `N`, or the largest total degree on spheres and
    /// projective spaces.
    #[serde(alias = "N", skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(alias = "M", skip_serializing_if = "Option::is_none")]
    pub m_max: Option<usize>,
    #[serde(alias = "M_jet", skip_serializing_if = "Option::is_none")]
    pub m_jet: Option<usize>,
    /// Operator power for the apply tasks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol_slope: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Index for `single-mode` inputs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<usize>,
    /// Exponent `s` of `gevrey-decay` inputs, `c_n = exp(−(n+1)^s)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gevrey_s: Option<f64>,
    /// Monomial coefficients of `zonal-polynomial` inputs in `cos θ`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<f64>>,
    /// K-type `δ = (p, q)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<(u32, i32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<Vec<f64>>,
    /// Width of Gaussian profiles and bumps.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Io {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    /// Optional data file: `r,value` samples (nc-transform), `n,value`
    /// coefficients (cp-synth).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    /// Fiber-basis table for spheres of dimension `q ≥ 3`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber_table: Option<PathBuf>,
    pub csv: bool,
    pub plots: bool,
}

impl Default for Io {
    fn default() -> Self {
        Self {
            output_dir: None,
            input: None,
            fiber_table: None,
            csv: true,
            plots: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub task: Task,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub io: Io,
}

/// Upper limits keeping a run within desk scale.
const MAX_SPHERE_DEGREE: usize = 64;
const MAX_COMPACT_BAND: usize = 200_000;
const MAX_ITERATES: usize = 400;
const MAX_JET: usize = 60;

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| {
            let msg = e.to_string();
            let field = msg
                .split('`')
                .nth(1)
                .filter(|_| msg.contains("field"))
                .unwrap_or("config")
                .to_string();
            CliError::config(field, format!("cannot parse config: {msg}"))
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    /// Fills per-task defaults and validates every field the task uses.
    pub fn resolve(mut self) -> Result<Self, CliError> {
        let task = self.task;
        let p = &mut self.params;
        match task {
            Task::SpecfunCheck => {}
            Task::NcTransform | Task::NcInvert | Task::NcPlancherel => {
                nc_defaults(p, (0.5, 0.5));
                p.support.get_or_insert(6.0);
                p.width.get_or_insert(1.0);
                p.grid_points.get_or_insert(200);
                if task == Task::NcInvert {
                    p.kind.get_or_insert(SyntheticKind::GevreyDecay);
                    kind_defaults(p);
                }
            }
            Task::NcCratio => {
                nc_defaults(p, (1.5, 0.5));
                p.delta.get_or_insert((2, 0));
                p.grid_points.get_or_insert(241);
            }
            Task::NcStep2 => {
                nc_defaults(p, (1.5, 0.5));
                p.delta.get_or_insert((2, 0));
                p.m_max.get_or_insert(3);
                p.trials.get_or_insert(50);
                p.kind.get_or_insert(SyntheticKind::BandLimitedRandom);
                kind_defaults(p);
            }
            Task::CpCoeffs | Task::CpSynth => {
                p.alpha.get_or_insert(0.0);
                p.beta.get_or_insert(0.0);
                p.n_max.get_or_insert(10);
                p.grid_points.get_or_insert(101);
                if self.io.input.is_none() {
                    p.kind.get_or_insert(SyntheticKind::BandLimitedRandom);
                    kind_defaults(p);
                }
            }
            Task::SphereDecompose | Task::SphereApply => {
                p.q.get_or_insert(2);
                p.n_max.get_or_insert(5);
                p.m.get_or_insert(1);
                p.kind.get_or_insert(SyntheticKind::BandLimitedRandom);
                kind_defaults(p);
            }
            Task::ProjDecompose => {
                let family = *p.family.get_or_insert(ProjectiveFamily::Complex);
                if family == ProjectiveFamily::Real {
                    p.q.get_or_insert(2);
                } else {
                    p.l.get_or_insert(3);
                }
                p.n_max.get_or_insert(3);
                p.m.get_or_insert(1);
                p.kind.get_or_insert(SyntheticKind::BandLimitedRandom);
                kind_defaults(p);
            }
            Task::ChernoffReport => {
                let model = *p.model.get_or_insert(ModelKind::Compact);
                p.m_max.get_or_insert(20);
                p.m_jet.get_or_insert(8);
                p.tol.get_or_insert(1e-10);
                p.tol_slope.get_or_insert(0.1);
                p.kind.get_or_insert(SyntheticKind::BandLimitedRandom);
                match model {
                    ModelKind::Noncompact => {
                        nc_defaults(p, (0.5, 0.5));
                        p.width.get_or_insert(1.0);
                    }
                    ModelKind::Compact => {
                        p.alpha.get_or_insert(0.0);
                        p.beta.get_or_insert(0.0);
                        p.n_max.get_or_insert(10);
                    }
                    ModelKind::Sphere => {
                        p.q.get_or_insert(2);
                        p.n_max.get_or_insert(5);
                    }
                    ModelKind::Projective => {
                        p.family.get_or_insert(ProjectiveFamily::Complex);
                        p.l.get_or_insert(3);
                        p.n_max.get_or_insert(3);
                    }
                }
                kind_defaults(p);
            }
        }
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<(), CliError> {
        let p = &self.params;
        let task = self.task;
        let lift = |e| CliError::from_validation(e, task);
        if let Some(a) = p.alpha {
            if !(a.is_finite() && a > -1.0) {
                return Err(CliError::config(
                    "alpha",
                    format!("alpha out of range: {a} (need > -1)"),
                ));
            }
        }
        if let Some(b) = p.beta {
            if !(b.is_finite() && b > -1.0) {
                return Err(CliError::config("beta", format!("beta out of range: {b} (need > -1)")));
            }
        }
        if self.uses_noncompact() {
            NcJacobiParams::new(p.alpha.unwrap_or(0.0), p.beta.unwrap_or(0.0)).map_err(lift)?;
            positive("band_limit", p.band_limit)?;
        } else if p.alpha.is_some() || p.beta.is_some() {
            CpJacobiParams::new(p.alpha.unwrap_or(0.0), p.beta.unwrap_or(0.0)).map_err(lift)?;
        }
        positive("support", p.support)?;
        positive("width", p.width)?;
        if let Some(q) = p.q {
            if q < 2 {
                return Err(CliError::config("q", format!("q out of range: {q} (need >= 2)")));
            }
        }
        if let Some(family) = p.family {
            if family == ProjectiveFamily::Real {
                if p.l.is_some() {
                    return Err(CliError::config("l", "real family is sized by q, not l"));
                }
            } else {
                family_qk(family, p.l.unwrap_or(0)).map_err(lift)?;
            }
        }
        if let Some((dp, dq)) = p.delta {
            KTypeIndex::new(dp, dq).map_err(lift)?;
        }
        if let Some(n) = p.n_max {
            let cap = if matches!(self.task, Task::CpCoeffs | Task::CpSynth)
                || self.params.model == Some(ModelKind::Compact)
            {
                MAX_COMPACT_BAND
            } else {
                MAX_SPHERE_DEGREE
            };
            if n > cap {
                return Err(CliError::config(
                    "n_max",
                    format!("n_max out of range: {n} (at most {cap})"),
                ));
            }
        }
        if let Some(m) = p.m_max {
            if m == 0 || m > MAX_ITERATES {
                return Err(CliError::config(
                    "m_max",
                    format!("M out of range: {m} (need 1..={MAX_ITERATES})"),
                ));
            }
        }
        if let Some(m) = p.m_jet {
            if m > MAX_JET {
                return Err(CliError::config(
                    "m_jet",
                    format!("M_jet out of range: {m} (at most {MAX_JET})"),
                ));
            }
        }
        if let Some(m) = p.m {
            if m > MAX_ITERATES {
                return Err(CliError::config(
                    "m",
                    format!("m out of range: {m} (at most {MAX_ITERATES})"),
                ));
            }
        }
        if let Some(t) = p.tol {
            if !(t.is_finite() && t >= 0.0) {
                return Err(CliError::config("tol", format!("tol out of range: {t}")));
            }
        }
        positive("tol_slope", p.tol_slope)?;
        if let Some(g) = p.grid_points {
            if g < 2 {
                return Err(CliError::config(
                    "grid_points",
                    format!("grid_points out of range: {g} (need >= 2)"),
                ));
            }
        }
        if let Some(t) = p.trials {
            if t == 0 {
                return Err(CliError::config("trials", "trials must be positive"));
            }
        }
        if let Some(s) = p.gevrey_s {
            if !(s.is_finite() && s > 0.0) {
                return Err(CliError::config(
                    "gevrey_s",
                    format!("gevrey_s out of range: {s} (need > 0)"),
                ));
            }
        }
        if let Some(ls) = &p.lambdas {
            if ls.is_empty() || ls.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
                return Err(CliError::config("lambdas", "lambdas must be positive and finite"));
            }
        }
        match p.kind {
            Some(SyntheticKind::BandLimitedRandom) if p.seed.is_none() => {
                return Err(CliError::config("seed", "band-limited-random input needs a seed"));
            }
            Some(SyntheticKind::ZonalPolynomial) => match &p.poly {
                None => {
                    return Err(CliError::config(
                        "poly",
                        "zonal-polynomial input needs poly coefficients",
                    ))
                }
                Some(c) if c.iter().any(|v| !v.is_finite()) => {
                    return Err(CliError::config("poly", "poly coefficients must be finite"))
                }
                _ => {}
            },
            _ => {}
        }
        if let Some(poly) = &p.poly {
            if let Some(n) = p.n_max {
                if poly.len() > n + 1 && p.kind == Some(SyntheticKind::ZonalPolynomial) {
                    return Err(CliError::config(
                        "poly",
                        format!("poly degree {} exceeds n_max = {n}", poly.len() - 1),
                    ));
                }
            }
        }
        Ok(())
    }

    fn uses_noncompact(&self) -> bool {
        matches!(
            self.task,
            Task::NcTransform | Task::NcInvert | Task::NcPlancherel | Task::NcCratio | Task::NcStep2
        ) || (self.task == Task::ChernoffReport && self.params.model == Some(ModelKind::Noncompact))
    }
}

fn nc_defaults(p: &mut Params, ab: (f64, f64)) {
    p.alpha.get_or_insert(ab.0);
    p.beta.get_or_insert(ab.1);
    p.band_limit.get_or_insert(10.0);
    p.support.get_or_insert(6.0);
}

fn kind_defaults(p: &mut Params) {
    match p.kind {
        Some(SyntheticKind::SingleMode) => {
            p.mode.get_or_insert(1);
        }
        Some(SyntheticKind::GevreyDecay) => {
            p.gevrey_s.get_or_insert(0.5);
        }
        _ => {}
    }
}

fn positive(field: &str, v: Option<f64>) -> Result<(), CliError> {
    match v {
        Some(x) if !(x.is_finite() && x > 0.0) => {
            Err(CliError::config(field, format!("{field} out of range: {x} (need > 0)")))
        }
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_resolve() {
        let c = RunConfig::from_json(r#"{"task":"chernoff-report","params":{"model":"sphere","M":12,"seed":3}}"#)
            .unwrap()
            .resolve()
            .unwrap();
        assert_eq!(c.params.m_max, Some(12));
        assert_eq!(c.params.q, Some(2));
        let echo = serde_json::to_string(&c).unwrap();
        assert_eq!(RunConfig::from_json(&echo).unwrap().resolve().unwrap(), c);
    }

    #[test]
    fn rejects_bad_fields() {
        let bad = RunConfig::from_json(r#"{"task":"nc-transform","params":{"alpha":-1.5}}"#)
            .unwrap()
            .resolve();
        match bad {
            Err(CliError::Config { field, reason }) => {
                assert_eq!(field, "alpha");
                assert!(reason.contains("alpha out of range"));
            }
            other => panic!("{other:?}"),
        }
        let beta = RunConfig::from_json(r#"{"task":"nc-invert","params":{"alpha":0.5,"beta":2.0}}"#)
            .unwrap()
            .resolve();
        assert!(matches!(beta, Err(CliError::Config { ref field, .. }) if field == "beta"));
        let unknown = RunConfig::from_json(r#"{"task":"cp-coeffs","params":{"alpah":0.5}}"#);
        assert!(matches!(unknown, Err(CliError::Config { ref field, .. }) if field == "alpah"));
        let seedless = RunConfig::from_json(r#"{"task":"sphere-decompose"}"#)
            .unwrap()
            .resolve();
        assert!(matches!(seedless, Err(CliError::Config { ref field, .. }) if field == "seed"));
        let fam = RunConfig::from_json(r#"{"task":"proj-decompose","params":{"family":"cayley","l":3,"seed":1}}"#)
            .unwrap()
            .resolve();
        assert!(matches!(fam, Err(CliError::Config { ref field, .. }) if field == "l"));
        let q = RunConfig::from_json(r#"{"task":"sphere-apply","params":{"q":1,"seed":1}}"#)
            .unwrap()
            .resolve();
        assert!(matches!(q, Err(CliError::Config { ref field, .. }) if field == "q"));
    }

    #[test]
    fn task_names() {
        assert_eq!(Task::ChernoffReport.to_string(), "chernoff-report");
        assert_eq!(serde_json::to_string(&Task::NcStep2).unwrap(), "\"nc-step2\"");
    }
}
