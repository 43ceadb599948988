//! Gauss–Jacobi quadrature by the Golub–Welsch method.

use serde::{Deserialize, Serialize};

use super::gamma::ln_gamma;
use super::jacobi::check_jacobi_type;
use crate::{Error, Result};

/// Gauss rule for the weight `(1−x)^α (1+x)^β` on `(−1, 1)`.
///
/// Exact for polynomials of degree `≤ 2·order − 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    alpha: f64,
    beta: f64,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `∫ f(x) (1−x)^α (1+x)^β dx`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Largest polynomial degree integrated exactly.
    pub fn exact_degree(&self) -> usize {
        2 * self.order() - 1
    }
}

/// Recurrence coefficients of the monic-orthonormal Jacobi family:
/// `x p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k−1}`.
struct JacobiMatrix {
    diag: Vec<f64>,
    // off[k] = b_{k+1}, coupling k and k+1; holds n entries so b_n is available.
    off: Vec<f64>,
    mu0: f64,
}

impl JacobiMatrix {
    fn new(n: usize, alpha: f64, beta: f64) -> Self {
        let s = alpha + beta;
        let diag = (0..n)
            .map(|k| {
                if k == 0 {
                    (beta - alpha) / (s + 2.0)
                } else {
                    let t = 2.0 * k as f64 + s;
                    (beta * beta - alpha * alpha) / (t * (t + 2.0))
                }
            })
            .collect();
        let off = (1..=n)
            .map(|k| {
                let kf = k as f64;
                let sq = if k == 1 {
                    4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + s).powi(2) * (3.0 + s))
                } else {
                    let t = 2.0 * kf + s;
                    4.0 * kf * (kf + alpha) * (kf + beta) * (kf + s) / (t * t * (t + 1.0) * (t - 1.0))
                };
                sq.sqrt()
            })
            .collect();
        let mu0 = ((s + 1.0) * std::f64::consts::LN_2 + ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0)
            - ln_gamma(s + 2.0))
        .exp();
        Self { diag, off, mu0 }
    }

    /// Orthonormal `p_0..p_{n}` and derivative of `p_n` at `x`.
    fn eval(&self, x: f64) -> (Vec<f64>, f64) {
        let n = self.diag.len();
        let mut p = Vec::with_capacity(n + 1);
        let p0 = 1.0 / self.mu0.sqrt();
        p.push(p0);
        let (mut dprev, mut dcur) = (0.0, 0.0);
        let mut prev = 0.0;
        for k in 0..n {
            let cur = p[k];
            let bk = if k == 0 { 0.0 } else { self.off[k - 1] };
            let next = ((x - self.diag[k]) * cur - bk * prev) / self.off[k];
            let dnext = (cur + (x - self.diag[k]) * dcur - bk * dprev) / self.off[k];
            p.push(next);
            prev = cur;
            dprev = dcur;
            dcur = dnext;
        }
        (p, dcur)
    }
}

/// Gauss–Jacobi rule of the given order.
///
/// Nodes are the eigenvalues of the symmetric tridiagonal Jacobi matrix,
/// polished by Newton steps on the orthonormal polynomial; weights come from
/// the Christoffel function `1 / Σ_{k<n} p_k(x_i)²`.
pub fn gauss_jacobi_rule(order: usize, alpha: f64, beta: f64) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::invalid("order", "quadrature order must be >= 1"));
    }
    check_jacobi_type(alpha, beta)?;
    let jm = JacobiMatrix::new(order, alpha, beta);

    let mut d = jm.diag.clone();
    let mut e: Vec<f64> = jm.off[..order - 1].to_vec();
    e.push(0.0);
    tridiagonal_eigenvalues(&mut d, &mut e);
    d.sort_by(f64::total_cmp);

    let mut nodes = d;
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = jm.eval(*x);
            if dp == 0.0 {
                break;
            }
            let step = p[order] / dp;
            if !step.is_finite() || step.abs() > 1e-6 {
                break;
            }
            *x -= step;
            if step.abs() < 1e-17 {
                break;
            }
        }
    }

    let weights = nodes
        .iter()
        .map(|&x| {
            let (p, _) = jm.eval(x);
            1.0 / p[..order].iter().map(|v| v * v).sum::<f64>()
        })
        .collect();

    Ok(QuadratureRule {
        nodes,
        weights,
        alpha,
        beta,
    })
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with
/// Wilkinson shifts. `e[i]` couples rows `i` and `i+1`; `e[n−1]` is ignored.
fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    if n < 2 {
        return;
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > 100 {
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

/// Gauss–Legendre nodes and weights mapped to `[a, b]`.
pub fn gauss_legendre(order: usize, a: f64, b: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let rule = gauss_jacobi_rule(order, 0.0, 0.0)?;
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let nodes = rule.nodes.iter().map(|x| mid + half * x).collect();
    let weights = rule.weights.iter().map(|w| half * w).collect();
    Ok((nodes, weights))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoint_rule() {
        let r = gauss_jacobi_rule(1, 0.0, 0.0).unwrap();
        assert!(r.nodes()[0].abs() < 1e-15);
        assert!((r.weights()[0] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn zero_order_rejected() {
        assert!(gauss_jacobi_rule(0, 0.0, 0.0).is_err());
        assert!(gauss_jacobi_rule(3, -1.2, 0.0).is_err());
    }

    #[test]
    fn total_mass_is_beta_integral() {
        let (a, b) = (0.5, 1.5);
        let r = gauss_jacobi_rule(9, a, b).unwrap();
        let sum: f64 = r.weights().iter().sum();
        // Γ(1.5)Γ(2.5)/Γ(4) · 2^3 = (√π/2)(3√π/4)/6 · 8 = π/2
        let expect = std::f64::consts::PI / 2.0;
        assert!((sum - expect).abs() < 1e-13, "{sum}");
    }

    #[test]
    fn legendre_moments_exact() {
        let r = gauss_jacobi_rule(6, 0.0, 0.0).unwrap();
        for k in 0..=11 {
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            let q = r.integrate(|x| x.powi(k));
            assert!((q - exact).abs() < 1e-12, "k={k}: {q} vs {exact}");
        }
    }

    #[test]
    fn jacobi_moments_exact() {
        // ∫(1+x)^j (1−x)^α(1+x)^β dx = 2^{α+β+j+1} B(α+1, β+j+1)
        let (a, b) = (1.3, -0.6);
        let r = gauss_jacobi_rule(7, a, b).unwrap();
        for j in 0..14 {
            let jf = j as f64;
            let exact = ((a + b + jf + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + jf + 1.0)
                - ln_gamma(a + b + jf + 2.0))
            .exp();
            let q = r.integrate(|x| (1.0 + x).powi(j));
            assert!((q - exact).abs() < 1e-12 * exact.max(1.0), "j={j}: {q} vs {exact}");
        }
    }

    #[test]
    fn nodes_increasing_weights_positive() {
        for &(a, b) in &[(0.0, 0.0), (-0.5, -0.5), (3.5, 0.2), (-0.9, 12.0)] {
            for n in [1, 2, 5, 40, 160] {
                let r = gauss_jacobi_rule(n, a, b).unwrap();
                assert_eq!(r.order(), n);
                assert!(r.nodes().windows(2).all(|w| w[0] < w[1]));
                assert!(r.weights().iter().all(|&w| w > 0.0));
                assert!(r.nodes().iter().all(|&x| x > -1.0 && x < 1.0));
            }
        }
    }

    #[test]
    fn chebyshev_nodes_closed_form() {
        // α = β = −1/2: x_i = cos((2i−1)π/(2n)), w_i = π/n
        let n = 17;
        let r = gauss_jacobi_rule(n, -0.5, -0.5).unwrap();
        for (i, (&x, &w)) in r.nodes().iter().zip(r.weights()).enumerate() {
            let k = n - i;
            let expect = ((2 * k - 1) as f64 * std::f64::consts::PI / (2 * n) as f64).cos();
            assert!((x - expect).abs() < 1e-14);
            assert!((w - std::f64::consts::PI / n as f64).abs() < 1e-13);
        }
    }

    #[test]
    fn legendre_on_interval() {
        let (x, w) = gauss_legendre(5, 1.0, 3.0).unwrap();
        let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(9)).sum();
        assert!((q - (3f64.powi(10) - 1.0) / 10.0).abs() < 1e-9);
    }
}
