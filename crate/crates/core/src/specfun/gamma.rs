//! Complex log-Gamma and Pochhammer symbols.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

// Lanczos coefficients for g = 7, n = 9, kept at their published digits.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Principal branch of `log Γ(z)`.
///
/// Uses the Lanczos approximation for `Re z >= 1/2` and the reflection
/// formula otherwise. The imaginary part is reduced into `(-π, π]`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Domain(format!("Gamma has a pole at z = {}", z.re)));
    }
    let raw = log_gamma_continuous(z);
    Ok(Complex64::new(raw.re, wrap_phase(raw.im)))
}

/// `log Γ(x)` for real `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma needs x > 0, got {x}");
    if x < 0.5 {
        // Γ(x)Γ(1−x) = π / sin(πx), sin(πx) > 0 on (0, 1/2).
        (PI / (PI * x).sin()).ln() - lanczos_real(1.0 - x)
    } else {
        lanczos_real(x)
    }
}

fn lanczos_real(x: f64) -> f64 {
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    HALF_LN_TWO_PI + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Analytic continuation of log Γ (no phase wrapping).
fn log_gamma_continuous(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let one = Complex64::new(1.0, 0.0);
        Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - lanczos_complex(one - z)
    } else {
        lanczos_complex(z)
    }
}

fn lanczos_complex(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_TWO_PI + (z + 0.5) * t.ln() - t + acc.ln()
}

/// `log sin(πz)`, stable for large `|Im z|` where `sin` itself overflows.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let w = z * PI;
    let i = Complex64::i();
    if w.im > 20.0 {
        // sin w = (i/2) e^{−iw} (1 − e^{2iw})
        Complex64::new(-(2.0f64.ln()), PI / 2.0) - i * w + (1.0 - (2.0 * i * w).exp()).ln()
    } else if w.im < -20.0 {
        // sin w = (−i/2) e^{iw} (1 − e^{−2iw})
        Complex64::new(-(2.0f64.ln()), -PI / 2.0) + i * w + (1.0 - (-2.0 * i * w).exp()).ln()
    } else {
        w.sin().ln()
    }
}

fn wrap_phase(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut t = theta - two_pi * (theta / two_pi).round();
    if t <= -PI {
        t += two_pi;
    }
    t
}

/// Rising factorial `(z)_m = z(z+1)…(z+m−1)`, with `(z)_0 = 1`.
pub fn pochhammer(z: Complex64, m: usize) -> Complex64 {
    (0..m).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z + j as f64))
}

/// Real rising factorial.
pub fn pochhammer_real(x: f64, m: usize) -> f64 {
    (0..m).fold(1.0, |acc, j| acc * (x + j as f64))
}
