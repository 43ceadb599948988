//! Truncated real power series in one variable.
//!
//! Jets at the origin are computed by composing these exactly (up to
//! rounding) instead of differentiating numerically.

use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    coeffs: Vec<f64>,
}

impl Series {
    /// Zero series holding coefficients of orders `0..=order`.
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![0.0; order + 1],
        }
    }

    pub fn constant(c: f64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn from_coeffs(mut coeffs: Vec<f64>, order: usize) -> Self {
        coeffs.resize(order + 1, 0.0);
        Self { coeffs }
    }

    /// `sin(a·t)`.
    pub fn sin_scaled(a: f64, order: usize) -> Self {
        Self::trig(a, order, 1)
    }

    /// `cos(a·t)`.
    pub fn cos_scaled(a: f64, order: usize) -> Self {
        Self::trig(a, order, 0)
    }

    fn trig(a: f64, order: usize, parity: usize) -> Self {
        let mut s = Self::zero(order);
        let mut term = 1.0; // a^k / k!
        for k in 0..=order {
            if k > 0 {
                term *= a / k as f64;
            }
            if k % 2 == parity {
                let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
                s.coeffs[k] = sign * term;
            }
        }
        s
    }

    /// `sinh(t)`.
    pub fn sinh(order: usize) -> Self {
        Self::hyperbolic(order, 1)
    }

    /// `cosh(t)`.
    pub fn cosh(order: usize) -> Self {
        Self::hyperbolic(order, 0)
    }

    fn hyperbolic(order: usize, parity: usize) -> Self {
        let mut s = Self::zero(order);
        let mut term = 1.0;
        for k in 0..=order {
            if k > 0 {
                term /= k as f64;
            }
            if k % 2 == parity {
                s.coeffs[k] = term;
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn scale(mut self, c: f64) -> Self {
        self.coeffs.iter_mut().for_each(|v| *v *= c);
        self
    }

    pub fn add_scaled(&mut self, other: &Series, c: f64) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += c * b;
        }
    }

    pub fn powi(&self, k: usize) -> Self {
        let mut out = Self::constant(1.0, self.order());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Derivatives `f^{(m)}(0) = m! · c_m`.
    pub fn derivatives(&self) -> Vec<f64> {
        let mut fact = 1.0;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(m, &c)| {
                if m > 0 {
                    fact *= m as f64;
                }
                c * fact
            })
            .collect()
    }
}

impl Mul for &Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut out = Series::zero(order);
        for (i, &a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

impl Add for &Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        let mut out = self.clone();
        out.add_scaled(rhs, 1.0);
        out
    }
}

impl Sub for &Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        let mut out = self.clone();
        out.add_scaled(rhs, -1.0);
        out
    }
}
