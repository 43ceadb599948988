//! Task implementations.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rankone::chernoff::{chernoff_verdict, ChernoffInput, ChernoffOptions};
use rankone::compact_jacobi::{
    apply_lcompact_spectral, operator_grid_apply, synthesize, CoefficientSequence, CpJacobiParams, JacobiAnalyzer,
};
use rankone::grid::SampleGrid;
use rankone::noncompact::{
    c_function, c_ratio_stat, forward_transform, inverse_transform, plancherel_defect, spectral_grid,
    step2_inequality_check, KTypeIndex, NcJacobiParams, RadialFunction, SpectralDensity,
};
use rankone::specfun::{
    gauss_jacobi_rule, gegenbauer, gegenbauer_jacobi_factor, jacobi_poly, jacobi_poly_derivative,
    jacobi_poly_second_derivative, ln_gamma, log_gamma, norm_constant, pochhammer_real, OrthoPolyIndex,
};
use rankone::sphere::{
    even_lift_decompose, norm_domination_check, projective_apply_lambda_spectral, projective_decompose,
    projective_domination_check, projective_synthesize, sphere_apply_delta_spectral, sphere_decompose,
    sphere_synthesize, HarmonicCoefficients, ProjectiveFamily, ProjectiveModel, SphereModel,
};
use rankone::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{ModelKind, Params, RunConfig, SyntheticKind, Task};
use crate::error::CliError;
use crate::output::{read_fiber_table, read_pairs, Artifacts, Table};
use crate::synth::{compact_input, even_input, noncompact_input, projective_input, sphere_input, SynthSpec};

/// Outcome of one task before it is written out.
#[derive(Debug, Clone)]
pub struct TaskOutput {
    pub results: Value,
    pub artifacts: Artifacts,
    /// Whether every check the task performs passed.
    pub passed: bool,
}

type TaskResult = Result<TaskOutput, CliError>;

/// Runs a resolved configuration.
pub fn execute(config: &RunConfig) -> TaskResult {
    let task = config.task;
    let p = &config.params;
    match task {
        Task::SpecfunCheck => specfun_check(),
        Task::NcTransform => nc_transform(config),
        Task::NcInvert => nc_invert(p),
        Task::NcPlancherel => nc_plancherel(p),
        Task::NcCratio => nc_cratio(p),
        Task::NcStep2 => nc_step2(p),
        Task::CpCoeffs => cp_coeffs(p),
        Task::CpSynth => cp_synth(config),
        Task::SphereDecompose => sphere_decompose_task(config),
        Task::SphereApply => sphere_apply_task(config),
        Task::ProjDecompose => proj_decompose_task(p),
        Task::ChernoffReport => chernoff_report(config),
    }
    .map_err(|e| match e {
        Failure::Cli(e) => e,
        Failure::Lib(source) => CliError::from_validation(source, task),
    })
}

/// Errors inside a task: library errors get the task attached on the way
/// out.
enum Failure {
    Cli(CliError),
    Lib(rankone::Error),
}

impl From<rankone::Error> for Failure {
    fn from(e: rankone::Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        Failure::Cli(e)
    }
}

type Out = Result<TaskOutput, Failure>;

fn req<T: Copy>(v: Option<T>, field: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::config(field, format!("{field} is required")))
}

fn synth_spec(p: &Params) -> Result<SynthSpec, CliError> {
    Ok(SynthSpec {
        kind: req(p.kind, "kind")?,
        seed: p.seed.unwrap_or(0),
        mode: p.mode.unwrap_or(1),
        gevrey_s: p.gevrey_s.unwrap_or(0.5),
        poly: p.poly.clone().unwrap_or_default(),
        width: p.width.unwrap_or(1.0),
    })
}

fn nc_params(p: &Params) -> Result<NcJacobiParams, Failure> {
    Ok(NcJacobiParams::new(req(p.alpha, "alpha")?, req(p.beta, "beta")?)?)
}

fn cp_params(p: &Params) -> Result<CpJacobiParams, Failure> {
    Ok(CpJacobiParams::new(req(p.alpha, "alpha")?, req(p.beta, "beta")?)?)
}

fn delta(p: &Params) -> Result<KTypeIndex, Failure> {
    let (dp, dq) = req(p.delta, "delta")?;
    Ok(KTypeIndex::new(dp, dq)?)
}

fn max_abs(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |m, v| m.max(v.abs()))
}

#[derive(Debug, Clone, Serialize)]
struct Check {
    name: &'static str,
    error: f64,
    tol: f64,
    pass: bool,
}

impl Check {
    fn new(name: &'static str, error: f64, tol: f64) -> Self {
        Self {
            name,
            error,
            tol,
            pass: error <= tol,
        }
    }
}

fn specfun_check() -> Out {
    let mut checks = Vec::new();
    let xs = [0.1, 0.5, 1.0, 2.5, 7.0, 30.0, 170.5];
    checks.push(Check::new(
        "ln_gamma recurrence",
        max_abs(
            xs.iter()
                .map(|&x| (ln_gamma(x + 1.0) - ln_gamma(x) - x.ln()) / ln_gamma(x + 1.0).abs().max(1.0)),
        ),
        1e-13,
    ));
    checks.push(Check::new(
        "gamma(1/2) = sqrt(pi)",
        (ln_gamma(0.5) - 0.5 * PI.ln()).abs(),
        1e-14,
    ));
    let zs = [
        Complex64::new(0.3, 0.7),
        Complex64::new(-1.4, 2.0),
        Complex64::new(0.5, 10.0),
    ];
    let refl = zs
        .iter()
        .map(|&z| {
            let lhs = log_gamma(z).and_then(|a| log_gamma(1.0 - z).map(|b| (a + b).exp()));
            let rhs = PI / (z * PI).sin();
            lhs.map(|l| ((l - rhs) / rhs).norm()).unwrap_or(f64::INFINITY)
        })
        .fold(0.0, f64::max);
    checks.push(Check::new("gamma reflection", refl, 1e-12));
    checks.push(Check::new(
        "pochhammer vs gamma ratio",
        max_abs([(0.5, 4), (2.25, 7), (-0.5, 3)].map(|(x, m): (f64, usize)| {
            let direct = pochhammer_real(x, m);
            let mut prod = 1.0;
            for i in 0..m {
                prod *= x + i as f64;
            }
            (direct - prod) / prod.abs()
        })),
        1e-13,
    ));
    let (a, b) = (0.5, -0.3);
    let rule = gauss_jacobi_rule(12, a, b).expect("valid rule");
    let scale = (-(a + b + 1.0) * std::f64::consts::LN_2).exp();
    let mut gram = 0.0f64;
    for m in 0..=8 {
        for n in 0..=8 {
            let cm = norm_constant(OrthoPolyIndex::new(m, a, b).expect("valid index"));
            let cn = norm_constant(OrthoPolyIndex::new(n, a, b).expect("valid index"));
            let v = scale
                * rule.integrate(|x| {
                    cm * cn
                        * jacobi_poly(OrthoPolyIndex::new(m, a, b).unwrap(), x)
                        * jacobi_poly(OrthoPolyIndex::new(n, a, b).unwrap(), x)
                });
            gram = gram.max((v - if m == n { 1.0 } else { 0.0 }).abs());
        }
    }
    checks.push(Check::new("jacobi orthonormality", gram, 1e-12));
    let mut ode = 0.0f64;
    for n in 0..=10 {
        for i in 0..=20 {
            let x = -0.95 + 0.095 * i as f64;
            let y = jacobi_poly(OrthoPolyIndex::new(n, a, b).unwrap(), x);
            let r = (1.0 - x * x) * jacobi_poly_second_derivative(n, a, b, x)
                + (b - a - (a + b + 2.0) * x) * jacobi_poly_derivative(n, a, b, x)
                + (n as f64) * (n as f64 + a + b + 1.0) * y;
            let s = 1.0 + (n * n) as f64 * y.abs();
            ode = ode.max(r.abs() / s);
        }
    }
    checks.push(Check::new("jacobi differential equation", ode, 1e-11));
    let mut geg = 0.0f64;
    for k in 0..=8 {
        for lam in [0.5, 1.5, 3.0] {
            let t = 0.37;
            let lhs = gegenbauer(k, lam, t).expect("valid parameter");
            let rhs = gegenbauer_jacobi_factor(k, lam)
                * jacobi_poly(OrthoPolyIndex::new(k, lam - 0.5, lam - 0.5).unwrap(), t);
            geg = geg.max((lhs - rhs).abs() / lhs.abs().max(1.0));
        }
    }
    checks.push(Check::new("gegenbauer-jacobi relation", geg, 1e-12));
    let mass = rule.integrate(|_| 1.0);
    let exact =
        ((a + b + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0)).exp();
    checks.push(Check::new("gauss-jacobi mass", (mass - exact).abs() / exact, 1e-13));
    let half = NcJacobiParams::new(-0.5, -0.5).expect("valid");
    let one = NcJacobiParams::new(0.5, 0.5).expect("valid");
    let mut cerr = 0.0f64;
    for lam in [0.5, 1.0, 5.0, 20.0] {
        let c0 = c_function(lam, &half)
            .map(|c| (c - Complex64::new(0.5, 0.0)).norm())
            .unwrap_or(f64::INFINITY);
        let c1 = c_function(lam, &one)
            .map(|c| (c - Complex64::new(0.0, -2.0 / lam)).norm())
            .unwrap_or(f64::INFINITY);
        cerr = cerr.max(c0).max(c1);
    }
    checks.push(Check::new("c-function closed forms", cerr, 1e-10));
    let ok = checks.iter().all(|c| c.pass);
    let mut table = Table::new("checks", &["name", "error", "tol", "pass"]);
    for c in &checks {
        table.push(vec![
            c.name.into(),
            c.error.into(),
            c.tol.into(),
            (if c.pass { "true" } else { "false" }).into(),
        ]);
    }
    let mut artifacts = Artifacts::default();
    artifacts.table(table);
    Ok(TaskOutput {
        results: json!({ "checks": checks }),
        artifacts,
        passed: ok,
    })
}

fn radial_grid(p: &Params) -> Result<SampleGrid, Failure> {
    let support = req(p.support, "support")?;
    let points = req(p.grid_points, "grid_points")?;
    Ok(SampleGrid::panel_gauss_legendre(
        0.0,
        support,
        points.div_ceil(16).max(1),
        16,
    )?)
}

fn gaussian(p: &Params, params: NcJacobiParams) -> Result<RadialFunction, Failure> {
    let w = req(p.width, "width")?;
    Ok(RadialFunction::from_fn(radial_grid(p)?, params, |r| {
        Complex64::new((-(r / w).powi(2)).exp(), 0.0)
    })?)
}

fn spectrum_table(name: &str, g: &SpectralDensity) -> Table {
    let mut t = Table::new(name, &["lambda", "re", "im"]);
    for (l, v) in g.grid().nodes().iter().zip(g.values()) {
        t.push(vec![(*l).into(), v.re.into(), v.im.into()]);
    }
    t
}

fn nc_transform(config: &RunConfig) -> Out {
    {
        let p = &config.params;
        let params = nc_params(p)?;
        let f = match &config.io.input {
            Some(path) => {
                let pairs = read_pairs(path)?;
                let grid = SampleGrid::trapezoid(pairs.iter().map(|q| q.0).collect())?;
                RadialFunction::new(grid, pairs.iter().map(|q| Complex64::new(q.1, 0.0)).collect(), params)?
            }
            None => gaussian(p, params)?,
        };
        let support = f.grid().last();
        let lam_grid = spectral_grid(req(p.band_limit, "band_limit")?, support)?;
        let g = forward_transform(&f, &lam_grid)?;
        let mut artifacts = Artifacts::default();
        artifacts.table(spectrum_table("spectrum", &g));
        artifacts.plot(
            "spectrum",
            "lambda",
            "re",
            g.grid().nodes().iter().zip(g.values()).map(|(l, v)| (*l, v.re)),
        );
        Ok(TaskOutput {
            results: json!({
                "radial_points": f.grid().len(),
                "spectral_points": g.grid().len(),
                "norm_sqr_radial": f.norm_sqr(),
                "norm_sqr_spectral": g.norm_sqr(),
            }),
            artifacts,
            passed: true,
        })
    }
}

fn nc_invert(p: &Params) -> Out {
    {
        let params = nc_params(p)?;
        let lam_grid = spectral_grid(req(p.band_limit, "band_limit")?, req(p.support, "support")?)?;
        let g = noncompact_input(&synth_spec(p)?, params, lam_grid)?;
        let f = inverse_transform(&g, &radial_grid(p)?)?;
        let mut t = Table::new("radial", &["r", "re", "im"]);
        for (r, v) in f.grid().nodes().iter().zip(f.values()) {
            t.push(vec![(*r).into(), v.re.into(), v.im.into()]);
        }
        let mut artifacts = Artifacts::default();
        artifacts.table(t);
        artifacts.plot(
            "radial",
            "r",
            "re",
            f.grid().nodes().iter().zip(f.values()).map(|(r, v)| (*r, v.re)),
        );
        Ok(TaskOutput {
            results: json!({
                "spectral_points": g.grid().len(),
                "norm_sqr_spectral": g.norm_sqr(),
                "norm_sqr_radial": f.norm_sqr(),
            }),
            artifacts,
            passed: true,
        })
    }
}

fn nc_plancherel(p: &Params) -> Out {
    {
        let params = nc_params(p)?;
        let f = gaussian(p, params)?;
        let defect = plancherel_defect(&f)?;
        let rel = defect / f.norm_sqr();
        Ok(TaskOutput {
            results: json!({ "norm_sqr": f.norm_sqr(), "defect": defect, "relative_defect": rel, "tol": 1e-6 }),
            artifacts: Artifacts::default(),
            passed: rel < 1e-6,
        })
    }
}

fn nc_cratio(p: &Params) -> Out {
    {
        let params = nc_params(p)?;
        let d = delta(p)?;
        let lambdas = match &p.lambdas {
            Some(l) => l.clone(),
            None => {
                let n = req(p.grid_points, "grid_points")?;
                let (lo, hi): (f64, f64) = (1e-2, 1e3);
                (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
            }
        };
        let values = lambdas
            .iter()
            .map(|&l| c_ratio_stat(l, &params, d))
            .collect::<Result<Vec<_>, _>>()?;
        let sup = values.iter().copied().fold(0.0, f64::max);
        let inf = values.iter().copied().fold(f64::INFINITY, f64::min);
        let mut t = Table::new("cratio", &["lambda", "ratio"]);
        for (l, v) in lambdas.iter().zip(&values) {
            t.push(vec![(*l).into(), (*v).into()]);
        }
        let mut artifacts = Artifacts::default();
        artifacts.table(t);
        artifacts.plot(
            "cratio",
            "lambda",
            "ratio",
            lambdas.iter().copied().zip(values.iter().copied()),
        );
        Ok(TaskOutput {
            results: json!({ "sup": sup, "inf": inf, "last": values.last(), "points": values.len() }),
            artifacts,
            passed: sup.is_finite(),
        })
    }
}

fn nc_step2(p: &Params) -> Out {
    {
        let params = nc_params(p)?;
        let d = delta(p)?;
        let trials = req(p.trials, "trials")?;
        let m_max = req(p.m_max, "m_max")?;
        let lam_grid = spectral_grid(req(p.band_limit, "band_limit")?, req(p.support, "support")?)?;
        let mut rng = ChaCha8Rng::seed_from_u64(req(p.seed, "seed")?);
        let mut t = Table::new("step2", &["trial", "m", "lhs", "rhs", "ratio"]);
        let mut worst = 0.0f64;
        let mut c1 = f64::NAN;
        for trial in 0..trials {
            let values = (0..lam_grid.len())
                .map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
                .collect();
            let g = SpectralDensity::new(lam_grid.clone(), values, params)?;
            for m in 1..=m_max {
                let c = step2_inequality_check(&g, d, m)?;
                worst = worst.max(c.ratio);
                c1 = c.c1;
                t.push(vec![trial.into(), m.into(), c.lhs.into(), c.rhs.into(), c.ratio.into()]);
            }
        }
        let mut artifacts = Artifacts::default();
        artifacts.table(t);
        Ok(TaskOutput {
            results: json!({ "max_ratio": worst, "c1": c1, "trials": trials, "tol": 1e-10 }),
            artifacts,
            passed: worst <= 1.0 + 1e-10,
        })
    }
}

fn coefficient_table(name: &str, c: &CoefficientSequence) -> Table {
    let mut t = Table::new(name, &["n", "value"]);
    for (n, v) in c.values().iter().enumerate() {
        t.push(vec![n.into(), (*v).into()]);
    }
    t
}

fn cp_coeffs(p: &Params) -> Out {
    {
        let params = cp_params(p)?;
        let n_max = req(p.n_max, "n_max")?;
        let spec = synth_spec(p)?;
        let input = compact_input(&spec, params, n_max)?;
        let deg = input.values().len() - 1;
        let analyzer = JacobiAnalyzer::new(params, deg + 1)?;
        let samples = if spec.kind == SyntheticKind::ZonalPolynomial {
            analyzer
                .theta_nodes()
                .iter()
                .map(|t| spec.poly.iter().rev().fold(0.0, |acc, c| acc * t.cos() + c))
                .collect()
        } else {
            synthesize(&input, analyzer.theta_nodes())
        };
        let c = analyzer.coefficients(&samples, deg, deg)?;
        let err = max_abs(c.values().iter().zip(input.values()).map(|(a, b)| a - b));
        let defect = analyzer.plancherel_defect(&samples, deg)?;
        let mut artifacts = Artifacts::default();
        artifacts.table(coefficient_table("coefficients", &c));
        Ok(TaskOutput {
            results: json!({
                "quadrature_order": analyzer.order(),
                "max_recovery_error": err,
                "plancherel_defect": defect,
                "norm_sqr": c.norm_sqr(),
                "tol": 1e-11,
            }),
            artifacts,
            passed: defect < 1e-11 && err < 1e-10,
        })
    }
}

fn cp_synth(config: &RunConfig) -> Out {
    {
        let p = &config.params;
        let params = cp_params(p)?;
        let c = match &config.io.input {
            Some(path) => {
                let pairs = read_pairs(path)?;
                let n = pairs.iter().map(|q| q.0 as usize).max().unwrap_or(0);
                let mut v = vec![0.0; n + 1];
                for (i, val) in pairs {
                    if i < 0.0 || i.fract() != 0.0 {
                        return Err(CliError::config(
                            "input",
                            format!("coefficient index {i} is not a nonnegative integer"),
                        )
                        .into());
                    }
                    v[i as usize] = val;
                }
                CoefficientSequence::new(v, params)?
            }
            None => compact_input(&synth_spec(p)?, params, req(p.n_max, "n_max")?)?,
        };
        let g = req(p.grid_points, "grid_points")?;
        let theta: Vec<f64> = (0..g).map(|i| PI * (i as f64 + 0.5) / g as f64).collect();
        let f = synthesize(&c, &theta);
        let lf = operator_grid_apply(&c, &theta);
        let lf_spec = synthesize(&apply_lcompact_spectral(&c, 1), &theta);
        let scale = max_abs(lf_spec.iter().copied()).max(1.0);
        let op_err = max_abs(lf.iter().zip(&lf_spec).map(|(a, b)| a - b)) / scale;
        let mut t = Table::new("profile", &["theta", "f", "lf"]);
        for ((th, a), b) in theta.iter().zip(&f).zip(&lf) {
            t.push(vec![(*th).into(), (*a).into(), (*b).into()]);
        }
        let mut artifacts = Artifacts::default();
        artifacts.table(t);
        artifacts.plot("profile", "theta", "f", theta.iter().copied().zip(f.iter().copied()));
        Ok(TaskOutput {
            results: json!({ "degree": c.degree(), "norm_sqr": c.norm_sqr(), "operator_consistency": op_err, "tol": 1e-8 }),
            artifacts,
            passed: op_err < 1e-8,
        })
    }
}

fn harmonic_table(name: &str, c: &HarmonicCoefficients, cols: [&str; 3]) -> Table {
    let mut t = Table::new(name, &[cols[0], cols[1], cols[2], "value"]);
    for (&(a, b, k), &v) in c.iter() {
        t.push(vec![a.into(), b.into(), k.into(), v.into()]);
    }
    t
}

fn coefficient_error(a: &HarmonicCoefficients, b: &HarmonicCoefficients) -> f64 {
    let keys: std::collections::BTreeSet<_> = a.iter().map(|(k, _)| *k).chain(b.iter().map(|(k, _)| *k)).collect();
    max_abs(keys.into_iter().map(|k| a.get(k) - b.get(k)))
}

fn sphere_model(config: &RunConfig) -> Result<SphereModel, Failure> {
    let p = &config.params;
    let q = req(p.q, "q")?;
    let n = req(p.n_max, "n_max")?;
    Ok(match &config.io.fiber_table {
        Some(path) => SphereModel::with_fiber(q, n, read_fiber_table(path)?)?,
        None => SphereModel::new(q, n)?,
    })
}

fn sphere_decompose_task(config: &RunConfig) -> Out {
    {
        let model = sphere_model(config)?;
        let input = sphere_input(&synth_spec(&config.params)?, &model)?;
        let f = sphere_synthesize(&model, &input)?;
        let c = sphere_decompose(&model, &f)?;
        let err = coefficient_error(&c, &input);
        let parseval = (c.norm_sqr() - model.norm_sqr(&f)?).abs();
        let mut artifacts = Artifacts::default();
        artifacts.table(harmonic_table("coefficients", &c, ["deg", "l", "k"]));
        Ok(TaskOutput {
            results: json!({
                "q": model.q(),
                "deg_max": model.deg_max(),
                "theta_nodes": model.theta_nodes().len(),
                "fiber_nodes": model.fiber().len(),
                "max_recovery_error": err,
                "parseval_defect": parseval,
                "tol": 1e-8,
            }),
            artifacts,
            passed: err < 1e-8 && parseval < 1e-8,
        })
    }
}

fn sphere_apply_task(config: &RunConfig) -> Out {
    {
        let p = &config.params;
        let model = sphere_model(config)?;
        let m = req(p.m, "m")?;
        let c = sphere_input(&synth_spec(p)?, &model)?;
        let applied = sphere_apply_delta_spectral(&c, model.q(), m);
        let mut dom = Vec::new();
        let mut worst = 0.0f64;
        for &(l, k) in model.fiber().modes() {
            let d = norm_domination_check(&c, model.q(), l, k, m)?;
            worst = worst.max(d.ratio);
            dom.push(json!({ "l": l, "k": k, "check": d }));
        }
        let mut artifacts = Artifacts::default();
        artifacts.table(harmonic_table("applied", &applied, ["deg", "l", "k"]));
        Ok(TaskOutput {
            results: json!({
                "m": m,
                "norm": c.norm_sqr().sqrt(),
                "ln_iterate_norm": 0.5 * c.ln_iterate_norm_sqr(m),
                "domination": dom,
                "max_domination_ratio": worst,
            }),
            artifacts,
            passed: worst <= 1.0 + 1e-10,
        })
    }
}

fn proj_decompose_task(p: &Params) -> Out {
    {
        let family = req(p.family, "family")?;
        let spec = synth_spec(p)?;
        let n = req(p.n_max, "n_max")?;
        let m = req(p.m, "m")?;
        let mut artifacts = Artifacts::default();
        if family == ProjectiveFamily::Real {
            let model = SphereModel::new(req(p.q, "q")?, n)?;
            let input = even_input(&spec, &model)?;
            let f = sphere_synthesize(&model, &input)?;
            let c = even_lift_decompose(&model, &f)?;
            let err = coefficient_error(&c, &input);
            let odd = max_abs(c.iter().filter(|(k, _)| k.0 % 2 == 1).map(|(_, v)| *v));
            artifacts.table(harmonic_table("coefficients", &c, ["deg", "l", "k"]));
            return Ok(TaskOutput {
                results: json!({
                    "family": family,
                    "q": model.q(),
                    "max_recovery_error": err,
                    "max_odd_coefficient": odd,
                    "tol": 1e-8,
                }),
                artifacts,
                passed: err < 1e-8 && odd < 1e-10,
            });
        }
        let model = ProjectiveModel::new(family, req(p.l, "l")?, n)?;
        let input = projective_input(&spec, &model)?;
        let f = projective_synthesize(&model, &input)?;
        let c = projective_decompose(&model, &f)?;
        let err = coefficient_error(&c, &input);
        let parseval = (c.norm_sqr() - model.norm_sqr(&f)?).abs();
        let applied = projective_apply_lambda_spectral(&c, &model, m);
        let mut worst = 0.0f64;
        for &(j, l) in model.fiber().modes() {
            worst = worst.max(projective_domination_check(&c, &model, j, l, m).ratio);
        }
        artifacts.table(harmonic_table("coefficients", &c, ["deg", "j", "l"]));
        artifacts.table(harmonic_table("applied", &applied, ["deg", "j", "l"]));
        Ok(TaskOutput {
            results: json!({
                "family": family,
                "q": model.q(),
                "k": model.k(),
                "rho": model.rho(),
                "max_recovery_error": err,
                "parseval_defect": parseval,
                "max_domination_ratio": worst,
                "tol": 1e-8,
            }),
            artifacts,
            passed: err < 1e-8 && parseval < 1e-8 && worst <= 1.0 + 1e-10,
        })
    }
}

fn chernoff_report(config: &RunConfig) -> Out {
    {
        let p = &config.params;
        let options = ChernoffOptions {
            m_max: req(p.m_max, "m_max")?,
            m_jet: req(p.m_jet, "m_jet")?,
            tol: req(p.tol, "tol")?,
            tol_slope: req(p.tol_slope, "tol_slope")?,
        };
        let spec = synth_spec(p)?;
        let report = match req(p.model, "model")? {
            ModelKind::Noncompact => {
                let params = nc_params(p)?;
                let grid = spectral_grid(req(p.band_limit, "band_limit")?, req(p.support, "support")?)?;
                let g = noncompact_input(&spec, params, grid)?;
                chernoff_verdict(ChernoffInput::Noncompact(&g), options)?
            }
            ModelKind::Compact => {
                let c = compact_input(&spec, cp_params(p)?, req(p.n_max, "n_max")?)?;
                chernoff_verdict(ChernoffInput::Compact(&c), options)?
            }
            ModelKind::Sphere => {
                let model = sphere_model(config)?;
                let c = sphere_input(&spec, &model)?;
                chernoff_verdict(ChernoffInput::Sphere(&c, &model), options)?
            }
            ModelKind::Projective => {
                let model = ProjectiveModel::new(req(p.family, "family")?, req(p.l, "l")?, req(p.n_max, "n_max")?)?;
                let c = projective_input(&spec, &model)?;
                chernoff_verdict(ChernoffInput::Projective(&c, &model), options)?
            }
        };
        let mut norms = Table::new("norms", &["m", "ln_norm", "norm", "growth", "partial_sum"]);
        for (m, ln) in report.ln_iterate_norms.iter().enumerate() {
            let (a, s) = if m == 0 {
                (f64::NAN, 0.0)
            } else {
                (report.fit.growth[m - 1], report.fit.partial_sums[m - 1])
            };
            norms.push(vec![
                m.into(),
                (*ln).into(),
                report.iterate_norms[m].into(),
                a.into(),
                s.into(),
            ]);
        }
        let mut jets = Table::new("jets", &["mode", "order", "value"]);
        for mj in &report.jets {
            for (o, v) in mj.jets.iter().enumerate() {
                jets.push(vec![mj.mode.clone().into(), o.into(), (*v).into()]);
            }
        }
        let mut artifacts = Artifacts::default();
        artifacts.table(norms);
        artifacts.table(jets);
        artifacts.plot(
            "carleman",
            "M",
            "partial_sum",
            report
                .fit
                .partial_sums
                .iter()
                .enumerate()
                .map(|(i, s)| ((i + 1) as f64, *s)),
        );
        artifacts.plot(
            "growth",
            "m",
            "a_m",
            report.fit.growth.iter().enumerate().map(|(i, s)| ((i + 1) as f64, *s)),
        );
        let ok = !report.inconsistent && report.log_convex;
        Ok(TaskOutput {
            results: serde_json::to_value(&report).expect("report serializes"),
            artifacts,
            passed: ok,
        })
    }
}
