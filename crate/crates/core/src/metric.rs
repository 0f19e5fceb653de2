//! The balanced metric: the sum of the left- and right-translated flat inner
//! product at the identity.

use serde::{Deserialize, Serialize};

use crate::error::{NilError, Result};
use crate::group::{ChartPoint, GroupElement, TangentVector};

/// Metric coefficients in the coordinate frame `{X, Y, Z}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricAtPoint {
    pub exx: f64,
    pub eyy: f64,
    pub ezz: f64,
    pub exy: f64,
    pub exz: f64,
    pub eyz: f64,
}

impl MetricAtPoint {
    pub fn matrix(&self) -> [[f64; 3]; 3] {
        [[self.exx, self.exy, self.exz], [self.exy, self.eyy, self.eyz], [self.exz, self.eyz, self.ezz]]
    }

    pub fn from_matrix(m: &[[f64; 3]; 3]) -> Self {
        Self {
            exx: m[0][0],
            eyy: m[1][1],
            ezz: m[2][2],
            exy: 0.5 * (m[0][1] + m[1][0]),
            exz: 0.5 * (m[0][2] + m[2][0]),
            eyz: 0.5 * (m[1][2] + m[2][1]),
        }
    }

    /// `⟨u, v⟩` for frame components `u`, `v`.
    pub fn inner(&self, u: &[f64; 3], v: &[f64; 3]) -> f64 {
        let m = self.matrix();
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += u[i] * m[i][j] * v[j];
            }
        }
        s
    }

    pub fn norm(&self, u: &[f64; 3]) -> f64 {
        self.inner(u, u).sqrt()
    }

    pub fn determinant(&self) -> f64 {
        det3(&self.matrix())
    }

    pub fn inverse(&self) -> [[f64; 3]; 3] {
        inv3(&self.matrix())
    }

    /// Lowers an index: `v ↦ g(v, ·)`.
    pub fn lower(&self, v: &[f64; 3]) -> [f64; 3] {
        let m = self.matrix();
        [0, 1, 2].map(|i| (0..3).map(|j| m[i][j] * v[j]).sum())
    }
}

pub(crate) fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub(crate) fn inv3(m: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let d = det3(m);
    let c = |i0: usize, i1: usize, j0: usize, j1: usize| m[i0][j0] * m[i1][j1] - m[i0][j1] * m[i1][j0];
    [
        [c(1, 2, 1, 2) / d, -c(0, 2, 1, 2) / d, c(0, 1, 1, 2) / d],
        [-c(1, 2, 0, 2) / d, c(0, 2, 0, 2) / d, -c(0, 1, 0, 2) / d],
        [c(1, 2, 0, 1) / d, -c(0, 2, 0, 1) / d, c(0, 1, 0, 1) / d],
    ]
}

fn mat_mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// Lie algebra element with entries `a` (1,2), `b` (2,3), `c` (1,3).
fn algebra_matrix(d: &[f64; 3]) -> [[f64; 3]; 3] {
    [[0.0, d[0], d[2]], [0.0, 0.0, d[1]], [0.0, 0.0, 0.0]]
}

fn algebra_entries(m: &[[f64; 3]; 3]) -> [f64; 3] {
    [m[0][1], m[1][2], m[0][2]]
}

fn flat_inner(u: &[f64; 3], v: &[f64; 3]) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

/// Balanced inner product at `g` of two matrix-coordinate tangent vectors.
///
/// The left pullback is `g⁻¹·V` and the right pullback is `V·g⁻¹`, both
/// evaluated as genuine matrix products.
pub fn balanced_inner_matrix(g: &GroupElement, u: &[f64; 3], v: &[f64; 3]) -> f64 {
    let ginv = g.inverse().matrix();
    let (mu, mv) = (algebra_matrix(u), algebra_matrix(v));
    let lu = algebra_entries(&mat_mul(&ginv, &mu));
    let lv = algebra_entries(&mat_mul(&ginv, &mv));
    let ru = algebra_entries(&mat_mul(&mu, &ginv));
    let rv = algebra_entries(&mat_mul(&mv, &ginv));
    flat_inner(&lu, &lv) + flat_inner(&ru, &rv)
}

/// Balanced inner product of two frame vectors based at `g`.
pub fn balanced_metric_from_translations(g: &GroupElement, u: &TangentVector, v: &TangentVector) -> Result<f64> {
    if u.base != v.base {
        return Err(NilError::BaseMismatch);
    }
    let gp = g.to_chart();
    let scale = 1.0 + gp.x.abs() * gp.y.abs();
    if (gp.x - u.base.x).abs() > 1e-12 * scale
        || (gp.y - u.base.y).abs() > 1e-12 * scale
        || (gp.zeta - u.base.zeta).abs() > 1e-12 * scale
    {
        return Err(NilError::BaseMismatch);
    }
    Ok(balanced_inner_matrix(g, &u.to_matrix_coords(), &v.to_matrix_coords()))
}

/// Metric coefficients assembled from the translation construction.
pub fn metric_from_translations(p: &ChartPoint) -> MetricAtPoint {
    let g = p.to_group();
    let frame = |i: usize| {
        let mut c = [0.0; 3];
        c[i] = 1.0;
        TangentVector::from_components(*p, c).to_matrix_coords()
    };
    let e = [frame(0), frame(1), frame(2)];
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = balanced_inner_matrix(&g, &e[i], &e[j]);
        }
    }
    MetricAtPoint::from_matrix(&m)
}

/// Closed-form coefficients: `⟨X,X⟩ = 2 + y²/2`, `⟨Y,Y⟩ = 2 + x²/2`,
/// `⟨X,Y⟩ = −xy/2`, `⟨Z,Z⟩ = 2`, the rest zero.
pub fn metric_closed_form(p: &ChartPoint) -> MetricAtPoint {
    MetricAtPoint {
        exx: 2.0 + 0.5 * p.y * p.y,
        eyy: 2.0 + 0.5 * p.x * p.x,
        ezz: 2.0,
        exy: -0.5 * p.x * p.y,
        exz: 0.0,
        eyz: 0.0,
    }
}
