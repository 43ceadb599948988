use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Root multiplicities `(m_γ, m_{2γ})` of a rank-one noncompact space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Multiplicities {
    pub m_gamma: f64,
    pub m_2gamma: f64,
}

/// Jacobi type `(α, β)` on the half line, restricted to `α > −1`,
/// `|β| ≤ α + 1` where the inversion and Plancherel formulas hold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NcJacobiParams {
    alpha: f64,
    beta: f64,
    multiplicities: Option<Multiplicities>,
}

impl NcJacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= -1.0 {
            return Err(Error::invalid(
                "alpha",
                format!("alpha out of range: {alpha} (need > -1)"),
            ));
        }
        if !beta.is_finite() || beta.abs() > alpha + 1.0 {
            return Err(Error::invalid(
                "beta",
                format!("beta out of range: {beta} (need |beta| <= alpha + 1 = {})", alpha + 1.0),
            ));
        }
        Ok(Self {
            alpha,
            beta,
            multiplicities: None,
        })
    }

    /// `α = (m_γ + m_{2γ} − 1)/2`, `β = (m_{2γ} − 1)/2`.
    pub fn from_multiplicities(m_gamma: f64, m_2gamma: f64) -> Result<Self> {
        if !(m_gamma >= 0.0) || !(m_2gamma >= 0.0) || !m_gamma.is_finite() || !m_2gamma.is_finite() {
            return Err(Error::invalid(
                "multiplicities",
                format!("root multiplicities must be nonnegative, got ({m_gamma}, {m_2gamma})"),
            ));
        }
        let mut p = Self::new(0.5 * (m_gamma + m_2gamma - 1.0), 0.5 * (m_2gamma - 1.0))?;
        p.multiplicities = Some(Multiplicities { m_gamma, m_2gamma });
        Ok(p)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Spectral shift `ϱ = α + β + 1`.
    pub fn varrho(&self) -> f64 {
        self.alpha + self.beta + 1.0
    }

    pub fn multiplicities(&self) -> Option<Multiplicities> {
        self.multiplicities
    }

    /// `(m_γ + m_{2γ})/2` when the type came from root multiplicities.
    ///
    /// Kept for reference only; spectral multipliers use [`Self::varrho`].
    pub fn rho_from_roots(&self) -> Option<f64> {
        self.multiplicities.map(|m| 0.5 * (m.m_gamma + m.m_2gamma))
    }

    /// Type `(α + p, β + q)` attached to a K-type.
    pub fn shifted(&self, delta: KTypeIndex) -> Self {
        // |β+q| ≤ |β| + |q| ≤ α + 1 + p, so the shifted type stays valid.
        Self {
            alpha: self.alpha + delta.p() as f64,
            beta: self.beta + delta.q() as f64,
            multiplicities: None,
        }
    }
}

/// K-type label `(p, q)` with `(p ± q)/2` nonnegative integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KTypeIndex {
    p: u32,
    q: i32,
}

impl KTypeIndex {
    pub fn new(p: u32, q: i32) -> Result<Self> {
        let p_i = p as i64;
        let q_i = q as i64;
        if (p_i + q_i) < 0 || (p_i - q_i) < 0 || (p_i + q_i) % 2 != 0 {
            return Err(Error::invalid(
                "delta",
                format!("(p, q) = ({p}, {q}) needs (p+q)/2 and (p-q)/2 to be nonnegative integers"),
            ));
        }
        Ok(Self { p, q })
    }

    pub fn trivial() -> Self {
        Self { p: 0, q: 0 }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> i32 {
        self.q
    }

    /// `(p + q)/2`.
    pub fn sum_half(&self) -> usize {
        ((self.p as i64 + self.q as i64) / 2) as usize
    }

    /// `(p − q)/2`.
    pub fn diff_half(&self) -> usize {
        ((self.p as i64 - self.q as i64) / 2) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicities_map_to_jacobi_type() {
        // Complex hyperbolic space H^2(C): m_γ = 2, m_2γ = 1.
        let p = NcJacobiParams::from_multiplicities(2.0, 1.0).unwrap();
        assert_eq!(p.alpha(), 1.0);
        assert_eq!(p.beta(), 0.0);
        assert_eq!(p.varrho(), 2.0);
        assert_eq!(p.rho_from_roots(), Some(1.5));
        assert!(NcJacobiParams::from_multiplicities(-1.0, 0.0).is_err());
    }

    #[test]
    fn parameter_ranges() {
        assert!(NcJacobiParams::new(-1.0, 0.0).is_err());
        assert!(NcJacobiParams::new(0.5, 1.6).is_err());
        assert!(NcJacobiParams::new(0.5, -1.5).is_ok());
        let err = NcJacobiParams::new(-1.5, 0.0).unwrap_err();
        assert!(err.to_string().contains("alpha out of range"));
    }

    #[test]
    fn k_types() {
        assert!(KTypeIndex::new(2, 0).is_ok());
        assert!(KTypeIndex::new(3, 1).is_ok());
        assert!(KTypeIndex::new(1, 3).is_err());
        assert!(KTypeIndex::new(2, 1).is_err());
        let d = KTypeIndex::new(4, -2).unwrap();
        assert_eq!((d.sum_half(), d.diff_half()), (1, 3));
    }
}
