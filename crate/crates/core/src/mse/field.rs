use serde::Serialize;

use super::grid::AnnulusGrid;
use crate::error::{NilError, Result};

/// Nodal values on an [`AnnulusGrid`], heights in fiber arc-length units.
/// Row-major: `values[i * n_theta + j]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalarField {
    n_r: usize,
    n_theta: usize,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(grid: &AnnulusGrid) -> Self {
        Self::constant(grid, 0.0)
    }

    pub fn constant(grid: &AnnulusGrid, c: f64) -> Self {
        Self { n_r: grid.n_r(), n_theta: grid.n_theta(), values: vec![c; grid.n_r() * grid.n_theta()] }
    }

    pub fn from_fn(grid: &AnnulusGrid, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut out = Self::zeros(grid);
        for i in 0..grid.n_r() {
            for j in 0..grid.n_theta() {
                out.set(i, j, f(grid.r(i), grid.theta(j)));
            }
        }
        out
    }

    pub fn from_values(grid: &AnnulusGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_r() * grid.n_theta() {
            return Err(NilError::InvalidParameter("field size does not match grid".into()));
        }
        Ok(Self { n_r: grid.n_r(), n_theta: grid.n_theta(), values })
    }

    pub fn matches(&self, grid: &AnnulusGrid) -> bool {
        self.n_r == grid.n_r() && self.n_theta == grid.n_theta()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n_theta + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.values[i * self.n_theta + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n_theta..(i + 1) * self.n_theta]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n_r(&self) -> usize {
        self.n_r
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn max(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Value at radius `r` along ray `j`, by cubic Lagrange interpolation on
    /// the four nearest radial nodes (linear on grids with fewer).
    pub fn sample_ray(&self, grid: &AnnulusGrid, r: f64, j: usize) -> f64 {
        let n = grid.n_r();
        let cell = grid.locate(r);
        let start = cell.saturating_sub(1).min(n - 4);
        let xs = [grid.r(start), grid.r(start + 1), grid.r(start + 2), grid.r(start + 3)];
        let mut total = 0.0;
        for a in 0..4 {
            let mut w = 1.0;
            for b in 0..4 {
                if a != b {
                    w *= (r - xs[b]) / (xs[a] - xs[b]);
                }
            }
            total += w * self.get(start + a, j);
        }
        total
    }

    /// Angular spread `max_j u − min_j u` on row `i`.
    pub fn row_spread(&self, i: usize) -> f64 {
        let row = self.row(i);
        row.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - row.iter().cloned().fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_ray_is_exact_for_cubics() {
        let g = AnnulusGrid::graded(1.0, 5.0, 16, 8, 2.0).unwrap();
        let f = ScalarField::from_fn(&g, |r, _| r * r * r - r);
        for r in [1.0, 1.37, 3.2, 5.0] {
            assert!((f.sample_ray(&g, r, 3) - (r * r * r - r)).abs() < 1e-11);
        }
    }

    #[test]
    fn size_mismatch_rejected() {
        let g = AnnulusGrid::uniform(1.0, 2.0, 4, 8).unwrap();
        assert!(ScalarField::from_values(&g, vec![0.0; 3]).is_err());
        assert!(ScalarField::from_values(&g, vec![0.0; 40]).is_ok());
    }
}
