//! Discrete fiber bases: quadrature nodes on a sphere `S^p` carrying an
//! orthonormal family of spherical harmonics.

use std::f64::consts::PI;

use super::harmonics::SphereModel;
use crate::{Error, Result};

/// Quadrature nodes with normalized weights and an orthonormal family of
/// harmonics sampled at the nodes.
///
/// Modes are labelled `(l, k)`: `l` is the harmonic degree on the fiber
/// and `k ≥ 1` enumerates an orthonormal basis of that degree.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberBasis {
    weights: Vec<f64>,
    modes: Vec<(usize, usize)>,
    values: Vec<Vec<f64>>,
    antipode: Option<Vec<usize>>,
    points: Option<Vec<Vec<f64>>>,
}

impl FiberBasis {
    /// Circular harmonics `{1, √2 cos lφ, √2 sin lφ}` for `l ≤ degree` on
    /// `M` equispaced nodes, `M` even and at least `2·degree + 2` so products
    /// of two degree-`degree` modes are integrated exactly.
    pub fn circle(degree: usize, nodes: usize) -> Result<Self> {
        let min = 2 * degree + 2;
        if nodes < min || !nodes.is_multiple_of(2) {
            return Err(Error::invalid(
                "fiber_nodes",
                format!("circle fiber needs an even node count >= {min}, got {nodes}"),
            ));
        }
        let phi: Vec<f64> = (0..nodes).map(|j| 2.0 * PI * j as f64 / nodes as f64).collect();
        let mut modes = vec![(0, 1)];
        let mut values = vec![vec![1.0; nodes]];
        let r2 = std::f64::consts::SQRT_2;
        for l in 1..=degree {
            modes.push((l, 1));
            values.push(phi.iter().map(|p| r2 * (l as f64 * p).cos()).collect());
            modes.push((l, 2));
            values.push(phi.iter().map(|p| r2 * (l as f64 * p).sin()).collect());
        }
        let half = nodes / 2;
        Ok(Self {
            weights: vec![1.0 / nodes as f64; nodes],
            modes,
            values,
            antipode: Some((0..nodes).map(|j| (j + half) % nodes).collect()),
            points: Some(phi.iter().map(|p| vec![p.cos(), p.sin()]).collect()),
        })
    }

    /// A single node of weight 1 carrying the constant mode `(0, 1)`.
    ///
    /// `dim` is the ambient dimension of the fiber sphere; the node sits at
    /// the first basis vector.
    pub fn zonal(dim: usize) -> Self {
        let mut e1 = vec![0.0; dim.max(1)];
        e1[0] = 1.0;
        Self {
            weights: vec![1.0],
            modes: vec![(0, 1)],
            values: vec![vec![1.0]],
            antipode: Some(vec![0]),
            points: Some(vec![e1]),
        }
    }

    /// Full harmonic tower of `S^p` up to `degree`, on the product grid of a
    /// sphere model. The model's measure has total mass `∫ sin^{p−1}θ dθ`;
    /// weights are divided by it and values scaled by its square root so the
    /// fiber measure is normalized. Mode `(j, idx)` enumerates the model's
    /// basis functions of total degree `j`.
    pub fn sphere(p: usize, degree: usize) -> Result<Self> {
        let model = SphereModel::new(p, degree)?;
        let mass = model.mass();
        let n_theta = model.theta_nodes().len();
        let inner = model.fiber();
        let n_inner = inner.len();
        let mut weights = Vec::with_capacity(n_theta * n_inner);
        for &wt in model.theta_weights() {
            for &wf in inner.weights() {
                weights.push(wt * wf / mass);
            }
        }
        let scale = mass.sqrt();
        let mut modes = Vec::new();
        let mut values = Vec::new();
        for j in 0..=degree {
            let mut idx = 0;
            for (mi, &(l, _)) in inner.modes().iter().enumerate() {
                if l > j {
                    continue;
                }
                idx += 1;
                modes.push((j, idx));
                let radial: Vec<f64> = model
                    .theta_nodes()
                    .iter()
                    .map(|&t| model.radial_profile(j, l, t))
                    .collect::<Result<_>>()?;
                let mut v = Vec::with_capacity(weights.len());
                for r in &radial {
                    for s in &inner.values()[mi] {
                        v.push(scale * r * s);
                    }
                }
                values.push(v);
            }
        }
        let antipode = inner.antipode().map(|inner_anti| {
            let mut out = Vec::with_capacity(n_theta * n_inner);
            for i in 0..n_theta {
                // Symmetric rule: the mirror of node i is node n−1−i.
                let mirror = n_theta - 1 - i;
                for &a in inner_anti {
                    out.push(mirror * n_inner + a);
                }
            }
            out
        });
        let points = inner.points().map(|inner_pts| {
            let mut out = Vec::with_capacity(n_theta * n_inner);
            for &t in model.theta_nodes() {
                for p in inner_pts {
                    let mut x = vec![t.cos()];
                    x.extend(p.iter().map(|c| c * t.sin()));
                    out.push(x);
                }
            }
            out
        });
        Ok(Self {
            weights,
            modes,
            values,
            antipode,
            points,
        })
    }

    /// User-supplied table: `weights[node]`, `modes[i] = (l, k)`,
    /// `values[i][node]`. Orthonormality under the weights is verified to
    /// `1e−8`.
    pub fn from_table(weights: Vec<f64>, modes: Vec<(usize, usize)>, values: Vec<Vec<f64>>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::invalid("fiber_table", "no fiber nodes"));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::invalid("fiber_table", "weights must be positive and finite"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::invalid(
                "fiber_table",
                format!("weights sum to {total}, expected 1"),
            ));
        }
        if modes.len() != values.len() {
            return Err(Error::invalid("fiber_table", "one value column per mode required"));
        }
        if values
            .iter()
            .any(|v| v.len() != weights.len() || v.iter().any(|x| !x.is_finite()))
        {
            return Err(Error::invalid(
                "fiber_table",
                "each mode needs one finite value per node",
            ));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(l, k) in &modes {
            if k == 0 || !seen.insert((l, k)) {
                return Err(Error::invalid(
                    "fiber_table",
                    format!("bad or repeated mode label {l}:{k}"),
                ));
            }
        }
        let basis = Self {
            weights,
            modes,
            values,
            antipode: None,
            points: None,
        };
        let defect = basis.gram_defect();
        if defect > 1e-8 {
            return Err(Error::invalid(
                "fiber_table",
                format!("fiber basis not orthonormal (max Gram defect {defect:e})"),
            ));
        }
        Ok(basis)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn modes(&self) -> &[(usize, usize)] {
        &self.modes
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    /// Index of the mode `(l, k)`.
    pub fn mode_index(&self, l: usize, k: usize) -> Option<usize> {
        self.modes.iter().position(|&m| m == (l, k))
    }

    /// Node permutation realising `ξ ↦ −ξ`, when known.
    pub fn antipode(&self) -> Option<&[usize]> {
        self.antipode.as_deref()
    }

    /// Ambient coordinates of the nodes, when known.
    pub fn points(&self) -> Option<&[Vec<f64>]> {
        self.points.as_deref()
    }

    /// Largest harmonic degree carried.
    pub fn max_degree(&self) -> usize {
        self.modes.iter().map(|m| m.0).max().unwrap_or(0)
    }

    /// `∫ F S_{l,k} dσ` for node samples `F`.
    pub fn project(&self, mode: usize, samples: &[f64]) -> f64 {
        self.weights
            .iter()
            .zip(&self.values[mode])
            .zip(samples)
            .map(|((w, s), f)| w * s * f)
            .sum()
    }

    /// Largest `|G − I|` entry of the discrete Gram matrix.
    pub fn gram_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.values.iter().enumerate() {
            for (j, b) in self.values.iter().enumerate().skip(i) {
                let g = self.project_pair(a, b);
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }

    fn project_pair(&self, a: &[f64], b: &[f64]) -> f64 {
        self.weights.iter().zip(a).zip(b).map(|((w, x), y)| w * x * y).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_is_orthonormal() {
        let f = FiberBasis::circle(4, 10).unwrap();
        assert_eq!(f.modes().len(), 9);
        assert!(f.gram_defect() < 1e-14);
        assert!(FiberBasis::circle(4, 9).is_err());
        assert!(FiberBasis::circle(4, 8).is_err());
        let anti = f.antipode().unwrap();
        let pts = f.points().unwrap();
        for (j, &a) in anti.iter().enumerate() {
            assert!((pts[j][0] + pts[a][0]).abs() < 1e-14 && (pts[j][1] + pts[a][1]).abs() < 1e-14);
        }
    }

    #[test]
    fn sphere_fiber_is_orthonormal() {
        for (p, d) in [(2, 3), (4, 3), (3, 2)] {
            let f = FiberBasis::sphere(p, d).unwrap();
            assert!(f.gram_defect() < 1e-12, "S^{p}: {}", f.gram_defect());
            assert!((f.weights().iter().sum::<f64>() - 1.0).abs() < 1e-14);
        }
        // S²: 2j+1 circular-harmonic slices in each degree.
        let f = FiberBasis::sphere(2, 3).unwrap();
        assert_eq!(f.modes().iter().filter(|m| m.0 == 3).count(), 7);
    }

    #[test]
    fn sphere_fiber_antipode_maps_points() {
        let f = FiberBasis::sphere(2, 2).unwrap();
        let pts = f.points().unwrap();
        for (j, &a) in f.antipode().unwrap().iter().enumerate() {
            for (x, y) in pts[j].iter().zip(&pts[a]) {
                assert!((x + y).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn table_validation() {
        let ok = FiberBasis::from_table(
            vec![0.5, 0.5],
            vec![(0, 1), (1, 1)],
            vec![vec![1.0, 1.0], vec![1.0, -1.0]],
        );
        assert!(ok.is_ok());
        let not_ortho = FiberBasis::from_table(
            vec![0.5, 0.5],
            vec![(0, 1), (1, 1)],
            vec![vec![1.0, 1.0], vec![1.0, 0.0]],
        );
        assert!(not_ortho.is_err());
        let bad_weights = FiberBasis::from_table(vec![0.5, 0.6], vec![(0, 1)], vec![vec![1.0, 1.0]]);
        assert!(bad_weights.is_err());
    }
}
