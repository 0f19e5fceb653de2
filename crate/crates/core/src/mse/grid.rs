use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{NilError, Result};
use crate::surface::WarpFunction;

/// Tensor grid in geodesic polar coordinates: radii `r_0 < … < r_N` and
/// periodic angles `θ_j = 2πj/M`. A grid with `r_0 = 0` is a disk whose first
/// row collapses to the polar origin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnnulusGrid {
    radii: Vec<f64>,
    n_theta: usize,
}

impl AnnulusGrid {
    pub fn new(radii: Vec<f64>, n_theta: usize) -> Result<Self> {
        if radii.len() < 5 {
            return Err(NilError::InvalidParameter(format!(
                "need at least 4 radial intervals, got {}",
                radii.len().saturating_sub(1)
            )));
        }
        if n_theta < 8 {
            return Err(NilError::InvalidParameter(format!("need at least 8 angular nodes, got {n_theta}")));
        }
        if radii[0] < 0.0 || radii.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(NilError::InvalidParameter("radii must be nonnegative and strictly increasing".into()));
        }
        Ok(Self { radii, n_theta })
    }

    pub fn uniform(r_min: f64, r_max: f64, n_r: usize, n_theta: usize) -> Result<Self> {
        let radii = (0..=n_r).map(|i| r_min + (r_max - r_min) * i as f64 / n_r as f64).collect();
        Self::new(radii, n_theta)
    }

    /// Radii clustered exponentially toward `r_min`:
    /// `r_i = r_min + (r_max − r_min)(e^{βξ} − 1)/(e^β − 1)`, `ξ = i/N`.
    /// `beta = 0` gives the uniform grid.
    pub fn graded(r_min: f64, r_max: f64, n_r: usize, n_theta: usize, beta: f64) -> Result<Self> {
        if beta.abs() < 1e-12 {
            return Self::uniform(r_min, r_max, n_r, n_theta);
        }
        let denom = beta.exp_m1();
        let radii = (0..=n_r)
            .map(|i| {
                let xi = i as f64 / n_r as f64;
                r_min + (r_max - r_min) * (beta * xi).exp_m1() / denom
            })
            .collect();
        Self::new(radii, n_theta)
    }

    /// Disk of radius `r_max` with radii `r_max·sinh(βξ)/sinh(β)`: nearly
    /// uniform at the origin and coarsening outward.
    pub fn disk(r_max: f64, n_r: usize, n_theta: usize, beta: f64) -> Result<Self> {
        if beta.abs() < 1e-12 {
            return Self::uniform(0.0, r_max, n_r, n_theta);
        }
        let radii = (0..=n_r).map(|i| r_max * (beta * i as f64 / n_r as f64).sinh() / beta.sinh()).collect();
        Self::new(radii, n_theta)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn r(&self, i: usize) -> f64 {
        self.radii[i]
    }

    /// Number of radial nodes, `N + 1`.
    pub fn n_r(&self) -> usize {
        self.radii.len()
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn d_theta(&self) -> f64 {
        2.0 * PI / self.n_theta as f64
    }

    pub fn theta(&self, j: usize) -> f64 {
        self.d_theta() * j as f64
    }

    pub fn r_min(&self) -> f64 {
        self.radii[0]
    }

    pub fn r_max(&self) -> f64 {
        *self.radii.last().expect("nonempty")
    }

    pub fn has_origin(&self) -> bool {
        self.radii[0] == 0.0
    }

    pub fn warp(&self, i: usize) -> f64 {
        WarpFunction.g(self.radii[i])
    }

    /// Index of the cell containing `r` for interpolation: the largest `i`
    /// with `r_i ≤ r`, clamped to `[0, N − 1]`.
    pub fn locate(&self, r: f64) -> usize {
        let k = self.radii.partition_point(|&x| x <= r);
        k.saturating_sub(1).min(self.radii.len() - 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_sizes() {
        assert!(AnnulusGrid::uniform(1.0, 2.0, 3, 16).is_err());
        assert!(AnnulusGrid::uniform(1.0, 2.0, 4, 7).is_err());
        assert!(AnnulusGrid::uniform(2.0, 1.0, 8, 8).is_err());
        assert!(AnnulusGrid::uniform(1.0, 2.0, 4, 8).is_ok());
    }

    #[test]
    fn graded_endpoints_and_monotonicity() {
        let g = AnnulusGrid::graded(1.0, 32.0, 256, 64, 5.0).unwrap();
        assert_eq!(g.r_min(), 1.0);
        assert!((g.r_max() - 32.0).abs() < 1e-12);
        let h0 = g.r(1) - g.r(0);
        let hn = g.r(256) - g.r(255);
        assert!(h0 < 0.005 && hn > 0.5);
        assert!(!g.has_origin());
    }

    #[test]
    fn disk_grid_starts_at_origin() {
        let g = AnnulusGrid::disk(8.0, 64, 32, 3.0).unwrap();
        assert!(g.has_origin());
        assert!((g.r_max() - 8.0).abs() < 1e-12);
        assert_eq!(g.locate(0.0), 0);
        assert_eq!(g.locate(8.0), 63);
    }
}
