//! Group structure of Nil₃ and the two coordinate systems used throughout.
//!
//! Group algebra lives in matrix coordinates: the element `(x, y, z)` is the
//! unipotent matrix with `x` and `y` on the superdiagonal and `z` in the
//! corner. Geometry lives in the chart `(x, y, ζ) ↦ (x, y, xy/2 + ζ)`, where
//! the surface `ζ = 0` is the totally geodesic plane.

use serde::{Deserialize, Serialize};

/// An element of Nil₃ in matrix coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupElement {
    pub x: f64,
    pub y: f64,
    /// The (1,3) matrix entry.
    pub z_mat: f64,
}

/// A point of Nil₃ in chart coordinates; `z_mat = xy/2 + zeta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub x: f64,
    pub y: f64,
    pub zeta: f64,
}

/// A tangent vector in the coordinate frame `{X, Y, Z}` of the chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangentVector {
    pub base: ChartPoint,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { x: 0.0, y: 0.0, z_mat: 0.0 };

    pub fn new(x: f64, y: f64, z_mat: f64) -> Self {
        Self { x, y, z_mat }
    }

    /// Matrix product `self · other`.
    pub fn multiply(&self, other: &GroupElement) -> GroupElement {
        GroupElement { x: self.x + other.x, y: self.y + other.y, z_mat: self.z_mat + other.z_mat + self.x * other.y }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement { x: -self.x, y: -self.y, z_mat: self.x * self.y - self.z_mat }
    }

    pub fn to_chart(&self) -> ChartPoint {
        ChartPoint { x: self.x, y: self.y, zeta: self.z_mat - 0.5 * self.x * self.y }
    }

    /// The full 3×3 matrix, row-major.
    pub fn matrix(&self) -> [[f64; 3]; 3] {
        [[1.0, self.x, self.z_mat], [0.0, 1.0, self.y], [0.0, 0.0, 1.0]]
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z_mat.is_finite()
    }
}

pub fn multiply(g1: &GroupElement, g2: &GroupElement) -> GroupElement {
    g1.multiply(g2)
}

pub fn inverse(g: &GroupElement) -> GroupElement {
    g.inverse()
}

impl ChartPoint {
    pub const ORIGIN: ChartPoint = ChartPoint { x: 0.0, y: 0.0, zeta: 0.0 };

    pub fn new(x: f64, y: f64, zeta: f64) -> Self {
        Self { x, y, zeta }
    }

    pub fn to_group(&self) -> GroupElement {
        GroupElement { x: self.x, y: self.y, z_mat: 0.5 * self.x * self.y + self.zeta }
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.x, self.y, self.zeta]
    }

    pub fn from_coords(c: [f64; 3]) -> Self {
        Self { x: c[0], y: c[1], zeta: c[2] }
    }

    /// Moves the point by `h` times the coordinate displacement `d`.
    pub fn offset(&self, d: [f64; 3], h: f64) -> Self {
        Self { x: self.x + h * d[0], y: self.y + h * d[1], zeta: self.zeta + h * d[2] }
    }
}

impl TangentVector {
    pub fn new(base: ChartPoint, a: f64, b: f64, c: f64) -> Self {
        Self { base, a, b, c }
    }

    pub fn from_components(base: ChartPoint, v: [f64; 3]) -> Self {
        Self { base, a: v[0], b: v[1], c: v[2] }
    }

    pub fn components(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// Components in matrix coordinates `(dx, dy, dz_mat)`.
    ///
    /// `X = ∂_x + (y/2)∂_z`, `Y = ∂_y + (x/2)∂_z`, `Z = ∂_z`.
    pub fn to_matrix_coords(&self) -> [f64; 3] {
        let p = self.base;
        [self.a, self.b, 0.5 * p.y * self.a + 0.5 * p.x * self.b + self.c]
    }

    /// Inverse of [`TangentVector::to_matrix_coords`].
    pub fn from_matrix_coords(base: ChartPoint, d: [f64; 3]) -> Self {
        let c = d[2] - 0.5 * base.y * d[0] - 0.5 * base.x * d[1];
        Self { base, a: d[0], b: d[1], c }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { base: self.base, a: s * self.a, b: s * self.b, c: s * self.c }
    }
}
