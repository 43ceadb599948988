//! Jacobi functions `φ_λ^{(α,β)}` as solutions of the singular initial value
//! problem `(ℒ_{α,β} + λ² + ϱ²)φ = 0`, `φ(0) = 1`, `φ'(0) = 0`.
//!
//! Near the regular singular point `r = 0` the solution is the Frobenius
//! series in `z = −sinh² r` with indicial exponent 0:
//!
//! ```text
//! φ = Σ t_k z^k,   t_{k+1} = t_k ((ϱ/2 + k)² + λ²/4) / ((k+1)(α+1+k))
//! ```
//!
//! Past a matching radius the ODE is integrated with an embedded
//! Dormand–Prince 5(4) pair.

use super::params::NcJacobiParams;
use crate::series::Series;

/// Frobenius matching radius ceiling.
const MATCH_RADIUS: f64 = 0.1;
const MIN_SERIES_TERMS: usize = 12;
const MAX_SERIES_TERMS: usize = 2000;

/// Tolerances for the Runge–Kutta stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeTolerance {
    pub rtol: f64,
    pub atol: f64,
}

impl Default for OdeTolerance {
    fn default() -> Self {
        Self {
            rtol: 1e-12,
            atol: 1e-15,
        }
    }
}

/// `φ_λ^{(α,β)}(r)`. Depends on `λ` only through `λ²`.
pub fn jacobi_function(lam: f64, params: &NcJacobiParams, r: f64) -> f64 {
    jacobi_function_profile(lam, params, &[r])[0]
}

/// `φ_λ` at every point of a nondecreasing list of radii, from one
/// integration pass.
pub fn jacobi_function_profile(lam: f64, params: &NcJacobiParams, radii: &[f64]) -> Vec<f64> {
    jacobi_function_states(lam, params, radii, OdeTolerance::default())
        .into_iter()
        .map(|(v, _)| v)
        .collect()
}

/// `(φ_λ(r), φ_λ'(r))` at nondecreasing radii.
pub fn jacobi_function_states(lam: f64, params: &NcJacobiParams, radii: &[f64], tol: OdeTolerance) -> Vec<(f64, f64)> {
    let lam = lam.abs();
    debug_assert!(radii.windows(2).all(|w| w[0] <= w[1]), "radii must be sorted");
    let system = JacobiOde::new(lam, params);
    let r0 = if lam > 10.0 {
        MATCH_RADIUS * 10.0 / lam
    } else {
        MATCH_RADIUS
    };

    let mut out = Vec::with_capacity(radii.len());
    let mut integrator: Option<Dopri5> = None;
    for &r in radii {
        let r = r.abs();
        if r <= r0 {
            out.push(system.series_state(r));
            continue;
        }
        let integ = integrator.get_or_insert_with(|| {
            let y0 = system.series_state(r0);
            Dopri5::new(r0, [y0.0, y0.1], (0.1 / (lam + 1.0)).min(0.01), tol)
        });
        let y = integ.advance_to(&system, r);
        out.push((y[0], y[1]));
    }
    out
}

/// Taylor series of `φ_λ` in `r` at 0, truncated at `order`.
pub fn jacobi_function_series(lam: f64, params: &NcJacobiParams, order: usize) -> Series {
    let sh = Series::sinh(order);
    let z = (&sh * &sh).scale(-1.0);
    let coeffs = JacobiOde::new(lam.abs(), params).frobenius_coefficients(order / 2 + 1);
    // Horner in z.
    let mut acc = Series::zero(order);
    for &t in coeffs.iter().rev() {
        acc = &acc * &z;
        acc.add_scaled(&Series::constant(1.0, order), t);
    }
    acc
}

struct JacobiOde {
    a1: f64,
    b1: f64,
    spectral: f64,
    lam: f64,
    half_varrho: f64,
    alpha: f64,
}

impl JacobiOde {
    fn new(lam: f64, params: &NcJacobiParams) -> Self {
        let varrho = params.varrho();
        Self {
            a1: 2.0 * params.alpha() + 1.0,
            b1: 2.0 * params.beta() + 1.0,
            spectral: lam * lam + varrho * varrho,
            lam,
            half_varrho: 0.5 * varrho,
            alpha: params.alpha(),
        }
    }

    fn rhs(&self, r: f64, y: [f64; 2]) -> [f64; 2] {
        let drift = self.a1 / r.tanh() + self.b1 * r.tanh();
        [y[1], -drift * y[1] - self.spectral * y[0]]
    }

    fn frobenius_coefficients(&self, count: usize) -> Vec<f64> {
        let mut t = Vec::with_capacity(count);
        let mut cur = 1.0;
        for k in 0..count {
            t.push(cur);
            let kf = k as f64;
            let num = (self.half_varrho + kf).powi(2) + 0.25 * self.lam * self.lam;
            cur *= num / ((kf + 1.0) * (self.alpha + 1.0 + kf));
        }
        t
    }

    /// Frobenius series value and `r`-derivative.
    fn series_state(&self, r: f64) -> (f64, f64) {
        if r == 0.0 {
            return (1.0, 0.0);
        }
        let sh = r.sinh();
        let z = -sh * sh;
        let dz_dr = -2.0 * sh * r.cosh();
        let mut term = 1.0; // t_k z^k
        let mut value = 1.0;
        let mut dvalue_dz = 0.0;
        for k in 0..MAX_SERIES_TERMS {
            let kf = k as f64;
            let num = (self.half_varrho + kf).powi(2) + 0.25 * self.lam * self.lam;
            let next = term * z * num / ((kf + 1.0) * (self.alpha + 1.0 + kf));
            value += next;
            // d/dz (t_{k+1} z^{k+1}) = (k+1) t_{k+1} z^k = t_k z^k · num/(α+1+k)
            dvalue_dz += term * num / (self.alpha + 1.0 + kf);
            term = next;
            if k + 1 >= MIN_SERIES_TERMS && next.abs() <= 1e-18 * value.abs().max(1e-300) {
                break;
            }
        }
        (value, dvalue_dz * dz_dr)
    }
}

/// Dormand–Prince 5(4) with FSAL, stepping exactly onto requested points.
struct Dopri5 {
    r: f64,
    y: [f64; 2],
    h: f64,
    k1: Option<[f64; 2]>,
    tol: OdeTolerance,
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

impl Dopri5 {
    fn new(r: f64, y: [f64; 2], h: f64, tol: OdeTolerance) -> Self {
        Self { r, y, h, k1: None, tol }
    }

    fn advance_to(&mut self, sys: &JacobiOde, target: f64) -> [f64; 2] {
        while self.r < target {
            let remaining = target - self.r;
            let (h, clipped) = if self.h >= remaining {
                (remaining, true)
            } else {
                (self.h, false)
            };
            let k1 = self.k1.unwrap_or_else(|| sys.rhs(self.r, self.y));
            let (y_new, k7, err) = self.trial(sys, h, k1);
            // Below this the step no longer moves `r`; accept rather than stall.
            let h_min = 16.0 * f64::EPSILON * self.r.abs().max(1.0);
            if err <= 1.0 || h <= h_min {
                self.r = if clipped { target } else { self.r + h };
                self.y = y_new;
                self.k1 = Some(k7);
                let factor = if err == 0.0 {
                    5.0
                } else {
                    (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                };
                // A clipped step says nothing about the natural step size.
                if !clipped || factor < 1.0 {
                    self.h = h * factor;
                }
            } else {
                self.h = (h * (0.9 * err.powf(-0.2)).clamp(0.1, 1.0)).max(h_min);
                self.k1 = Some(k1);
            }
        }
        self.y
    }

    fn trial(&self, sys: &JacobiOde, h: f64, k1: [f64; 2]) -> ([f64; 2], [f64; 2], f64) {
        let (r, y) = (self.r, self.y);
        let stage = |coef: &[(f64, &[f64; 2])]| -> [f64; 2] {
            let mut out = y;
            for (c, k) in coef {
                out[0] += h * c * k[0];
                out[1] += h * c * k[1];
            }
            out
        };
        let k2 = sys.rhs(r + C2 * h, stage(&[(A21, &k1)]));
        let k3 = sys.rhs(r + C3 * h, stage(&[(A31, &k1), (A32, &k2)]));
        let k4 = sys.rhs(r + C4 * h, stage(&[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = sys.rhs(r + C5 * h, stage(&[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
        let k6 = sys.rhs(
            r + h,
            stage(&[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
        );
        let y_new = stage(&[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
        let k7 = sys.rhs(r + h, y_new);
        let mut err_sq = 0.0;
        for i in 0..2 {
            let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let scale = self.tol.atol + self.tol.rtol * y[i].abs().max(y_new[i].abs());
            err_sq += (e / scale).powi(2);
        }
        (y_new, k7, (0.5 * err_sq).sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_origin_is_one() {
        for &(a, b) in &[(0.5, -0.5), (1.5, 0.5), (-0.5, -0.5), (3.0, 2.0)] {
            let p = NcJacobiParams::new(a, b).unwrap();
            for lam in [0.0, 1.0, 7.5] {
                assert_eq!(jacobi_function(lam, &p, 0.0), 1.0);
            }
        }
    }

    #[test]
    fn cosine_case() {
        let p = NcJacobiParams::new(-0.5, -0.5).unwrap();
        let v = jacobi_function(2.0, &p, 1.0);
        assert!((v - 2f64.cos()).abs() < 1e-10, "{v}");
        let radii: Vec<f64> = (0..200).map(|i| 0.05 * i as f64).collect();
        let prof = jacobi_function_profile(5.0, &p, &radii);
        for (r, v) in radii.iter().zip(prof) {
            assert!((v - (5.0 * r).cos()).abs() < 1e-9, "r={r}");
        }
    }

    #[test]
    fn even_in_lambda() {
        let p = NcJacobiParams::new(0.5, -0.5).unwrap();
        for r in [0.05, 0.7, 3.0] {
            assert_eq!(jacobi_function(3.0, &p, r), jacobi_function(-3.0, &p, r));
        }
    }

    #[test]
    fn series_and_integrator_agree_across_matching_radius() {
        let p = NcJacobiParams::new(1.5, 0.5).unwrap();
        let ode = JacobiOde::new(2.0, &p);
        // Series converges up to sinh² r < 1; compare against the integrated profile.
        let radii = [0.3, 0.5, 0.7];
        let prof = jacobi_function_states(2.0, &p, &radii, OdeTolerance::default());
        for (r, (v, d)) in radii.iter().zip(prof) {
            let (sv, sd) = ode.series_state(*r);
            assert!((sv - v).abs() < 1e-11, "r={r}: {sv} vs {v}");
            assert!((sd - d).abs() < 1e-10, "r={r}: {sd} vs {d}");
        }
    }

    #[test]
    fn taylor_series_matches_values() {
        let p = NcJacobiParams::new(1.0, 0.0).unwrap();
        let s = jacobi_function_series(1.7, &p, 24);
        let r: f64 = 0.2;
        let approx: f64 = s.coeffs().iter().enumerate().map(|(k, c)| c * r.powi(k as i32)).sum();
        assert!((approx - jacobi_function(1.7, &p, r)).abs() < 1e-13);
        // φ''(0) = −(λ²+ϱ²)/(2α+2)
        let d2 = s.derivatives()[2];
        assert!((d2 + (1.7f64.powi(2) + 4.0) / 4.0).abs() < 1e-13);
    }

    #[test]
    fn tiny_absolute_tolerance_terminates() {
        let p = NcJacobiParams::new(0.5, -0.5).unwrap();
        let tol = OdeTolerance {
            rtol: 1e-13,
            atol: 1e-300,
        };
        let radii: Vec<f64> = (1..=40).map(|i| 0.125 * i as f64).collect();
        let states = jacobi_function_states(5.0, &p, &radii, tol);
        let loose = jacobi_function_profile(5.0, &p, &radii);
        for ((v, _), w) in states.iter().zip(&loose) {
            assert!((v - w).abs() < 1e-9);
        }
    }

    #[test]
    fn exponential_decay_at_large_radius() {
        // |φ_λ(r)| ≤ φ_0(r) ≤ C (1+r) e^{−ϱ r}
        let p = NcJacobiParams::new(0.5, 0.5).unwrap();
        let v = jacobi_function(3.0, &p, 12.0).abs();
        assert!(v < 20.0 * (-2.0f64 * 12.0).exp());
    }
}
