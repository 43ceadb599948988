//! Jacobi and Gegenbauer polynomials.

use serde::{Deserialize, Serialize};

use super::gamma::ln_gamma;
use crate::{Error, Result};

/// Degree and type `(α, β)` of a Jacobi polynomial `P_n^{(α,β)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrthoPolyIndex {
    n: usize,
    alpha: f64,
    beta: f64,
}

impl OrthoPolyIndex {
    pub fn new(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        check_jacobi_type(alpha, beta)?;
        Ok(Self { n, alpha, beta })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

pub(crate) fn check_jacobi_type(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(Error::invalid(
            "alpha",
            format!("alpha out of range: {alpha} (need > -1)"),
        ));
    }
    if !(beta > -1.0) || !beta.is_finite() {
        return Err(Error::invalid("beta", format!("beta out of range: {beta} (need > -1)")));
    }
    Ok(())
}

/// `P_n^{(α,β)}(x)` by the forward three-term recurrence.
pub fn jacobi_poly(idx: OrthoPolyIndex, x: f64) -> f64 {
    jacobi_value(idx.n, idx.alpha, idx.beta, x)
}

pub(crate) fn jacobi_value(n: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    let mut out = 0.0;
    JacobiRecurrence::new(alpha, beta, x).take(n + 1).for_each(|p| out = p);
    out
}

/// `P_0, …, P_{n_max}` at one point.
pub fn jacobi_poly_all(n_max: usize, alpha: f64, beta: f64, x: f64) -> Vec<f64> {
    JacobiRecurrence::new(alpha, beta, x).take(n_max + 1).collect()
}

/// Derivative `d/dx P_n^{(α,β)} = (n+α+β+1)/2 · P_{n−1}^{(α+1,β+1)}`.
pub fn jacobi_poly_derivative(n: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    0.5 * (n as f64 + alpha + beta + 1.0) * jacobi_value(n - 1, alpha + 1.0, beta + 1.0, x)
}

/// Second derivative of `P_n^{(α,β)}`.
pub fn jacobi_poly_second_derivative(n: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let nf = n as f64;
    0.25 * (nf + alpha + beta + 1.0) * (nf + alpha + beta + 2.0) * jacobi_value(n - 2, alpha + 2.0, beta + 2.0, x)
}

/// Iterator over `P_0(x), P_1(x), …` for a fixed type.
struct JacobiRecurrence {
    alpha: f64,
    beta: f64,
    x: f64,
    k: usize,
    prev: f64,
    cur: f64,
}

impl JacobiRecurrence {
    fn new(alpha: f64, beta: f64, x: f64) -> Self {
        Self {
            alpha,
            beta,
            x,
            k: 0,
            prev: 0.0,
            cur: 1.0,
        }
    }
}

impl Iterator for JacobiRecurrence {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let (a, b, x) = (self.alpha, self.beta, self.x);
        let out = self.cur;
        let next = if self.k == 0 {
            0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
        } else {
            // 2n(n+s)(2n+s−2) P_n = (2n+s−1)[(2n+s)(2n+s−2)x + a²−b²] P_{n−1}
            //                        − 2(n+a−1)(n+b−1)(2n+s) P_{n−2}
            let n = (self.k + 1) as f64;
            let s = a + b;
            let c0 = 2.0 * n * (n + s) * (2.0 * n + s - 2.0);
            let c1 = (2.0 * n + s - 1.0) * ((2.0 * n + s) * (2.0 * n + s - 2.0) * x + a * a - b * b);
            let c2 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * (2.0 * n + s);
            (c1 * self.cur - c2 * self.prev) / c0
        };
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
        Some(out)
    }
}

/// Gegenbauer polynomial `C_k^λ(t)`.
///
/// Requires `λ > −1/2` and `λ ≠ 0` (the Gamma prefactor relating `C_k^λ` to
/// `P_k^{(λ−1/2, λ−1/2)}` degenerates at zero).
pub fn gegenbauer(k: usize, lam: f64, t: f64) -> Result<f64> {
    if !(lam > -0.5) || lam == 0.0 || !lam.is_finite() {
        return Err(Error::Domain(format!(
            "Gegenbauer parameter lambda = {lam} outside (-1/2, ∞) \\ {{0}}"
        )));
    }
    Ok(gegenbauer_value(k, lam, t))
}

pub(crate) fn gegenbauer_value(k: usize, lam: f64, t: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * lam * t;
    for n in 2..=k {
        let nf = n as f64;
        let next = (2.0 * (nf + lam - 1.0) * t * cur - (nf + 2.0 * lam - 2.0) * prev) / nf;
        prev = cur;
        cur = next;
    }
    cur
}

/// Log of the normalising constant `C(α,β,n)` making
/// `C(α,β,n) P_n^{(α,β)}(cos θ)` orthonormal for
/// `(sin θ/2)^{2α+1}(cos θ/2)^{2β+1} dθ`.
pub fn ln_norm_constant(idx: OrthoPolyIndex) -> f64 {
    ln_norm_constant_raw(idx.n, idx.alpha, idx.beta)
}

pub(crate) fn ln_norm_constant_raw(n: usize, alpha: f64, beta: f64) -> f64 {
    let nf = n as f64;
    let s = alpha + beta;
    // (2n+s+1)Γ(n+s+1) = (2n+s+1)/(n+s+1) · Γ(n+s+2); the ratio is 1 at n = 0.
    let ratio = if n == 0 {
        1.0
    } else {
        (2.0 * nf + s + 1.0) / (nf + s + 1.0)
    };
    let ln_sq = ratio.ln() + ln_gamma(nf + 1.0) + ln_gamma(nf + s + 2.0)
        - ln_gamma(nf + alpha + 1.0)
        - ln_gamma(nf + beta + 1.0);
    0.5 * ln_sq
}

/// `C(α,β,n)`, computed in log space.
pub fn norm_constant(idx: OrthoPolyIndex) -> f64 {
    ln_norm_constant(idx).exp()
}

/// Normalised Jacobi trigonometric polynomial `𝒫_n^{(α,β)}(θ)`.
pub fn jacobi_trig(idx: OrthoPolyIndex, theta: f64) -> f64 {
    norm_constant(idx) * jacobi_poly(idx, theta.cos())
}

/// Prefactor `Γ(λ+½)Γ(k+2λ) / (Γ(2λ)Γ(k+λ+½))` with
/// `C_k^λ = prefactor · P_k^{(λ−½, λ−½)}`, for `λ > 0`.
pub fn gegenbauer_jacobi_factor(k: usize, lam: f64) -> f64 {
    let kf = k as f64;
    (ln_gamma(lam + 0.5) + ln_gamma(kf + 2.0 * lam) - ln_gamma(2.0 * lam) - ln_gamma(kf + lam + 0.5)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Rodrigues formula via exact polynomial arithmetic on (1−x), (1+x).
    ///
    /// (1−x)^α(1+x)^β P_n = (−1)^n/(2^n n!) dⁿ/dxⁿ[(1−x)^{n+α}(1+x)^{n+β}].
    /// Leibniz: dⁿ[(1−x)^{n+α}(1+x)^{n+β}] = Σ_k C(n,k) (−1)^k (n+α)_{↓k} (n+β)_{↓(n−k)}
    ///          (1−x)^{n+α−k}(1+x)^{β+k}, so dividing by the weight leaves a polynomial.
    fn rodrigues(n: usize, a: f64, b: f64, x: f64) -> f64 {
        let falling = |base: f64, k: usize| (0..k).fold(1.0, |acc, j| acc * (base - j as f64));
        let binom = |n: usize, k: usize| (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64);
        let mut sum = 0.0;
        for k in 0..=n {
            let term = binom(n, k)
                * (-1f64).powi(k as i32)
                * falling(n as f64 + a, k)
                * falling(n as f64 + b, n - k)
                * (1.0 - x).powi((n - k) as i32)
                * (1.0 + x).powi(k as i32);
            sum += term;
        }
        let fact = (1..=n).fold(1.0, |acc, j| acc * j as f64);
        (-1f64).powi(n as i32) * sum / (2f64.powi(n as i32) * fact)
    }

    #[test]
    fn low_degree_values() {
        let idx = OrthoPolyIndex::new(0, 2.3, -0.4).unwrap();
        assert_eq!(jacobi_poly(idx, 0.77), 1.0);
        let idx = OrthoPolyIndex::new(1, 0.0, 0.0).unwrap();
        assert!((jacobi_poly(idx, 0.3) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn reflection_symmetry() {
        let a = jacobi_poly(OrthoPolyIndex::new(3, 1.0, 2.0).unwrap(), -0.4);
        let b = jacobi_poly(OrthoPolyIndex::new(3, 2.0, 1.0).unwrap(), 0.4);
        assert!((a + b).abs() < 1e-13);
    }

    #[test]
    fn recurrence_matches_rodrigues() {
        for &(a, b) in &[(0.0, 0.0), (0.5, -0.5), (2.0, 1.0)] {
            for n in 0..=5 {
                for i in 0..21 {
                    let x = -1.0 + 0.1 * i as f64;
                    let r = jacobi_value(n, a, b, x);
                    let o = rodrigues(n, a, b, x);
                    assert!((r - o).abs() < 1e-12, "n={n} a={a} b={b} x={x}: {r} vs {o}");
                }
            }
        }
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(OrthoPolyIndex::new(2, -1.0, 0.0).is_err());
        assert!(OrthoPolyIndex::new(2, 0.0, -1.5).is_err());
        assert!(OrthoPolyIndex::new(2, f64::NAN, 0.0).is_err());
    }

    #[test]
    fn gegenbauer_values_and_domain() {
        assert_eq!(gegenbauer(0, 0.7, 0.1).unwrap(), 1.0);
        assert!((gegenbauer(1, 1.0, 0.5).unwrap() - 1.0).abs() < 1e-15);
        assert!(gegenbauer(2, -0.5, 0.1).is_err());
        assert!(gegenbauer(2, 0.0, 0.1).is_err());
        assert!(gegenbauer(2, -0.7, 0.1).is_err());
    }

    #[test]
    fn gegenbauer_jacobi_relation() {
        for &(k, lam, t) in &[(3usize, 1.5, 0.2), (5, 0.25, -0.7), (7, 3.0, 0.9), (0, 0.8, 0.3)] {
            let lhs = gegenbauer(k, lam, t).unwrap();
            let rhs = gegenbauer_jacobi_factor(k, lam) * jacobi_value(k, lam - 0.5, lam - 0.5, t);
            assert!((lhs - rhs).abs() < 1e-10, "{k} {lam} {t}: {lhs} {rhs}");
        }
    }

    #[test]
    fn norm_constant_closed_forms() {
        let c1 = norm_constant(OrthoPolyIndex::new(1, 0.0, 0.0).unwrap());
        assert!((c1 - 3f64.sqrt()).abs() < 1e-13);
        let c0 = norm_constant(OrthoPolyIndex::new(0, 0.0, 0.0).unwrap());
        assert!((c0 - 1.0).abs() < 1e-14);
        for n in 0..30 {
            let c = norm_constant(OrthoPolyIndex::new(n, 0.0, 0.0).unwrap());
            assert!((c * c - (2 * n + 1) as f64).abs() < 1e-10 * (2 * n + 1) as f64);
        }
        // α+β = −1 at n = 0: C² = Γ(α+β+2)/(Γ(α+1)Γ(β+1)) = 1/(Γ(1/2)²) · Γ(1) = 1/π
        let c = norm_constant(OrthoPolyIndex::new(0, -0.5, -0.5).unwrap());
        assert!((c * c - 1.0 / std::f64::consts::PI).abs() < 1e-14);
        // Large degree stays finite.
        assert!(norm_constant(OrthoPolyIndex::new(400, 3.5, 1.5).unwrap()).is_finite());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let (n, a, b) = (6, 0.5, 1.5);
        for &x in &[-0.8, -0.1, 0.35, 0.9] {
            let h = 1e-5;
            let fd1 = (jacobi_value(n, a, b, x + h) - jacobi_value(n, a, b, x - h)) / (2.0 * h);
            let fd2 = (jacobi_value(n, a, b, x + h) - 2.0 * jacobi_value(n, a, b, x) + jacobi_value(n, a, b, x - h))
                / (h * h);
            assert!((fd1 - jacobi_poly_derivative(n, a, b, x)).abs() < 1e-6);
            assert!((fd2 - jacobi_poly_second_derivative(n, a, b, x)).abs() < 1e-3);
        }
    }
}
