//! The totally geodesic plane `ζ = 0` as a rotationally symmetric model
//! surface, its circle action and the splitting of Nil₃ as plane × center.
//!
//! In geodesic polar coordinates about the identity the induced metric is
//! `dr² + g(r)² dθ²` with `g(r) = √(r² + r⁴/8)`, and `r = √2·√(x² + y²)`.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::connection::christoffel_closed_form;
use crate::error::{NilError, Result};
use crate::group::{ChartPoint, GroupElement, TangentVector};
use crate::metric::{balanced_inner_matrix, metric_closed_form};

/// A point of the plane, in chart coordinates with `ζ = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub x: f64,
    pub y: f64,
}

/// Geodesic polar coordinates about the identity. `theta_pol` is the plane
/// polar angle `atan2(y, x)`, not the launch angle of [`geodesic_closed_form`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarCoord {
    pub r: f64,
    pub theta_pol: f64,
}

/// An element `(0, 0, t)` of the center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CenterElement {
    pub t: f64,
}

impl SurfacePoint {
    pub const IDENTITY: SurfacePoint = SurfacePoint { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn to_chart(&self) -> ChartPoint {
        ChartPoint::new(self.x, self.y, 0.0)
    }

    pub fn to_group(&self) -> GroupElement {
        self.to_chart().to_group()
    }

    pub fn to_polar(&self) -> PolarCoord {
        let t = self.y.atan2(self.x);
        PolarCoord { r: distance_to_identity(self), theta_pol: if t < 0.0 { t + 2.0 * PI } else { t } }
    }

    pub fn from_polar(p: &PolarCoord) -> Self {
        let rho = p.r / SQRT_2;
        Self { x: rho * p.theta_pol.cos(), y: rho * p.theta_pol.sin() }
    }
}

impl CenterElement {
    /// Arc length along the center, `√2·t`.
    pub fn arc_length(&self) -> f64 {
        SQRT_2 * self.t
    }
}

/// Radial geodesic through the identity with launch angle `theta`, at arc
/// length `t`. Its direction has plane polar angle `theta + π/4`.
///
/// Returns the point of the plane and its matrix `z` entry (`xy/2`).
pub fn geodesic_closed_form(theta: f64, t: f64) -> (SurfacePoint, f64) {
    let (s, c) = theta.sin_cos();
    let x = 0.5 * t * (c - s);
    let y = 0.5 * t * (s + c);
    (SurfacePoint::new(x, y), (c - s) * (s + c) * t * t / 8.0)
}

/// Riemannian distance to the identity within the plane.
pub fn distance_to_identity(p: &SurfacePoint) -> f64 {
    SQRT_2 * p.x.hypot(p.y)
}

/// Rotation by `theta` about the center, preserving the chart offset `ζ`.
pub fn circle_action(theta: f64, g: &GroupElement) -> GroupElement {
    let (s, c) = theta.sin_cos();
    let x = g.x * c - g.y * s;
    let y = g.x * s + g.y * c;
    let zeta = g.z_mat - 0.5 * g.x * g.y;
    GroupElement::new(x, y, 0.5 * x * y + zeta)
}

/// The rotation formula with the `z` entry taken as `x'y'/2 + z`, kept for
/// comparison in the verification report. It fails to preserve the plane
/// and is not an action.
pub fn circle_action_as_printed(theta: f64, g: &GroupElement) -> GroupElement {
    let (s, c) = theta.sin_cos();
    let x = g.x * c - g.y * s;
    let y = g.x * s + g.y * c;
    GroupElement::new(x, y, 0.5 * x * y + g.z_mat)
}

/// `Ψ(p, t) = (x, y, xy/2 + t)`.
pub fn splitting_isometry(p: &SurfacePoint, c: &CenterElement) -> GroupElement {
    GroupElement::new(p.x, p.y, 0.5 * p.x * p.y + c.t)
}

pub fn splitting_inverse(g: &GroupElement) -> (SurfacePoint, CenterElement) {
    (SurfacePoint::new(g.x, g.y), CenterElement { t: g.z_mat - 0.5 * g.x * g.y })
}

/// Pullback of the balanced metric under `Ψ`, in the coordinates `(x, y, t)`.
/// The differential of `Ψ` is exact; the metric is the translation construction.
pub fn splitting_pullback(p: &SurfacePoint, c: &CenterElement) -> [[f64; 3]; 3] {
    let g = splitting_isometry(p, c);
    let d = [[1.0, 0.0, 0.5 * p.y], [0.0, 1.0, 0.5 * p.x], [0.0, 0.0, 1.0]];
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = balanced_inner_matrix(&g, &d[i], &d[j]);
        }
    }
    out
}

/// The warp `g(r) = √(r² + r⁴/8)` of the plane in geodesic polar coordinates.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct WarpFunction;

impl WarpFunction {
    pub fn g(&self, r: f64) -> f64 {
        r * (1.0 + r * r / 8.0).sqrt()
    }

    pub fn dg(&self, r: f64) -> f64 {
        (1.0 + r * r / 4.0) / (1.0 + r * r / 8.0).sqrt()
    }

    pub fn ddg(&self, r: f64) -> f64 {
        let q = 1.0 + r * r / 8.0;
        r * (0.375 + r * r / 32.0) / (q * q.sqrt())
    }

    /// Geodesic curvature `g′/g` of the distance circle of radius `r`.
    pub fn circle_curvature(&self, r: f64) -> f64 {
        self.dg(r) / self.g(r)
    }

    /// `−g″/g`, with the removable singularity at `r = 0` resolved.
    pub fn curvature(&self, r: f64) -> f64 {
        let q = 1.0 + r * r / 8.0;
        -(0.375 + r * r / 32.0) / (q * q)
    }
}

pub fn warp(r: f64) -> Result<(f64, f64, f64)> {
    if r < 0.0 {
        return Err(NilError::NegativeRadius(r));
    }
    let w = WarpFunction;
    Ok((w.g(r), w.dg(r), w.ddg(r)))
}

/// Length of the circle-action orbit through a point at distance `r`,
/// divided by `2π`. Uses the translation-built metric on matrix-coordinate
/// tangents and the periodic trapezoid rule with `n` nodes.
pub fn orbit_length_over_two_pi(r: f64, n: usize) -> f64 {
    let start = SurfacePoint::from_polar(&PolarCoord { r, theta_pol: 0.0 }).to_group();
    let mut total = 0.0;
    for k in 0..n {
        let psi = 2.0 * PI * k as f64 / n as f64;
        let q = circle_action(psi, &start);
        let base = q.to_chart();
        let tangent = TangentVector::new(base, -q.y, q.x, 0.0).to_matrix_coords();
        total += balanced_inner_matrix(&q, &tangent, &tangent).sqrt();
    }
    total / n as f64
}

/// Gaussian curvature of the plane from the Riemann tensor,
/// `K = ⟨∇_Y∇_X X − ∇_X∇_Y X, Y⟩ / (|X|²|Y|² − ⟨X,Y⟩²)`, differentiating the
/// closed-form connection by central differences of step `h`.
pub fn gaussian_curvature_riemann(p: &SurfacePoint, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(NilError::NonPositiveStep(h));
    }
    let c = p.to_chart();
    let gam = christoffel_closed_form(&c).gamma;
    let deriv = |dir: [f64; 3]| {
        let plus = christoffel_closed_form(&c.offset(dir, h)).gamma;
        let minus = christoffel_closed_form(&c.offset(dir, -h)).gamma;
        let mut out = [[[0.0; 3]; 3]; 3];
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    out[k][i][j] = (plus[k][i][j] - minus[k][i][j]) / (2.0 * h);
                }
            }
        }
        out
    };
    let dx = deriv([1.0, 0.0, 0.0]);
    let dy = deriv([0.0, 1.0, 0.0]);
    // ∇_Y ∇_X X − ∇_X ∇_Y X, frame components.
    let mut a = [0.0; 3];
    for (m, am) in a.iter_mut().enumerate() {
        let mut yxx = dy[m][0][0];
        let mut xyx = dx[m][1][0];
        for k in 0..3 {
            yxx += gam[k][0][0] * gam[m][1][k];
            xyx += gam[k][1][0] * gam[m][0][k];
        }
        *am = yxx - xyx;
    }
    let metric = metric_closed_form(&c);
    let num = metric.inner(&a, &[0.0, 1.0, 0.0]);
    let area = metric.exx * metric.eyy - metric.exy * metric.exy;
    Ok(num / area)
}

/// The two closed-form candidates `(K_printed, −g″/g)`; the printed constant
/// is `−4(r² + 12)/(r² + 8)²`.
pub fn curvature_closed_forms(p: &SurfacePoint) -> (f64, f64) {
    let r = distance_to_identity(p);
    let q = r * r + 8.0;
    let printed = -4.0 * (r * r + 12.0) / (q * q);
    (printed, WarpFunction.curvature(r))
}

/// Second fundamental form of the plane, `⟨∇_U V, N⟩` for `U, V ∈ {X, Y}`
/// with unit normal `N = Z/√2`.
pub fn second_fundamental_form_t(p: &SurfacePoint) -> [[f64; 2]; 2] {
    let c = p.to_chart();
    let gamma = christoffel_closed_form(&c);
    let metric = metric_closed_form(&c);
    let normal = [0.0, 0.0, 1.0 / SQRT_2];
    let mut out = [[0.0; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let mut u = [0.0; 3];
            u[i] = 1.0;
            let mut w = [0.0; 3];
            w[j] = 1.0;
            *v = metric.inner(&gamma.contract(&u, &w), &normal);
        }
    }
    out
}

/// Periodic boundary values as a function of the plane polar angle.
#[derive(Clone)]
pub struct BoundaryData {
    phi: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    label: String,
}

impl BoundaryData {
    pub fn new(label: impl Into<String>, phi: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { phi: Arc::new(phi), label: label.into() }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(format!("const:{c}"), move |_| c)
    }

    /// `amplitude · cos(k θ)`.
    pub fn cosine(amplitude: f64, k: u32) -> Self {
        Self::new(format!("cos:{amplitude},{k}"), move |t| amplitude * (k as f64 * t).cos())
    }

    pub fn sine(amplitude: f64, k: u32) -> Self {
        Self::new(format!("sin:{amplitude},{k}"), move |t| amplitude * (k as f64 * t).sin())
    }

    /// Parses `const:C`, `cos:A[,k]` or `sin:A[,k]`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || NilError::InvalidParameter(format!("unrecognized boundary data '{text}'"));
        let (kind, args) = text.split_once(':').ok_or_else(bad)?;
        let nums: Vec<f64> = args
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let freq = |i: usize| -> Result<u32> {
            match nums.get(i) {
                None => Ok(1),
                Some(v) if *v >= 0.0 && v.fract() == 0.0 => Ok(*v as u32),
                Some(_) => Err(bad()),
            }
        };
        match (kind, nums.len()) {
            ("const", 1) => Ok(Self::constant(nums[0])),
            ("cos", 1 | 2) => Ok(Self::cosine(nums[0], freq(1)?)),
            ("sin", 1 | 2) => Ok(Self::sine(nums[0], freq(1)?)),
            _ => Err(bad()),
        }
    }

    pub fn eval(&self, theta: f64) -> f64 {
        (self.phi)(theta)
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for BoundaryData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundaryData").field("label", &self.label).finish()
    }
}
