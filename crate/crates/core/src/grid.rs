//! One-dimensional sample grids carrying quadrature weights.

use serde::{Deserialize, Serialize};

use crate::specfun::gauss_legendre;
use crate::{Error, Result};

/// Strictly increasing sample points with integration weights.
///
/// Radial profiles and spectral densities are stored on these grids so that
/// every integral over the samples is a weighted sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl SampleGrid {
    pub fn new(nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::invalid("grid", "grid must be nonempty"));
        }
        if nodes.len() != weights.len() {
            return Err(Error::invalid(
                "grid",
                format!("{} nodes but {} weights", nodes.len(), weights.len()),
            ));
        }
        if nodes.iter().chain(&weights).any(|v| !v.is_finite()) {
            return Err(Error::invalid("grid", "nodes and weights must be finite"));
        }
        if !nodes.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::invalid("grid", "nodes must be strictly increasing"));
        }
        Ok(Self { nodes, weights })
    }

    /// Composite Gauss–Legendre rule: `panels` equal panels on `[a, b]`
    /// with `points` nodes each.
    pub fn panel_gauss_legendre(a: f64, b: f64, panels: usize, points: usize) -> Result<Self> {
        if !(b > a) {
            return Err(Error::invalid("grid", format!("empty interval [{a}, {b}]")));
        }
        if panels == 0 {
            return Err(Error::invalid("grid", "need at least one panel"));
        }
        let h = (b - a) / panels as f64;
        let mut nodes = Vec::with_capacity(panels * points);
        let mut weights = Vec::with_capacity(panels * points);
        for p in 0..panels {
            let lo = a + h * p as f64;
            let (x, w) = gauss_legendre(points, lo, lo + h)?;
            nodes.extend(x);
            weights.extend(w);
        }
        Self::new(nodes, weights)
    }

    /// Trapezoidal weights on arbitrary increasing nodes.
    pub fn trapezoid(nodes: Vec<f64>) -> Result<Self> {
        let n = nodes.len();
        let mut weights = vec![0.0; n];
        for i in 1..n {
            let h = nodes[i] - nodes[i - 1];
            weights[i - 1] += 0.5 * h;
            weights[i] += 0.5 * h;
        }
        Self::new(nodes, weights)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn first(&self) -> f64 {
        self.nodes[0]
    }

    pub fn last(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    pub fn integrate(&self, values: &[f64]) -> f64 {
        self.weights.iter().zip(values).map(|(w, v)| w * v).sum()
    }
}
