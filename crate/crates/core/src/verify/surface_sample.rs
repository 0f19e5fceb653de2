use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::sync::Arc;

use super::spline::{NaturalSpline, PeriodicSpline};
use crate::connection::christoffel_closed_form;
use crate::error::{NilError, Result};
use crate::group::ChartPoint;
use crate::metric::metric_closed_form;
use crate::mse::{polar_to_cartesian, AnnulusGrid, ScalarField};
use crate::radial::{catenoid_height, CatenoidParams};
use crate::surface::{circle_action, PolarCoord, SurfacePoint};

type Param = Arc<dyn Fn(f64, f64) -> ChartPoint + Send + Sync>;

/// A parametrized surface `(u, v) ↦ ChartPoint` in Nil₃ together with a
/// sampling grid and the finite-difference step used to differentiate it.
#[derive(Clone)]
pub struct SurfaceSample {
    label: String,
    param: Param,
    pub u_range: (f64, f64),
    pub v_range: (f64, f64),
    pub n_u: usize,
    pub n_v: usize,
    /// When set, `v` is an angle and the last column is identified with the first.
    pub periodic_v: bool,
    pub step: f64,
}

impl fmt::Debug for SurfaceSample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SurfaceSample")
            .field("label", &self.label)
            .field("u_range", &self.u_range)
            .field("v_range", &self.v_range)
            .field("n_u", &self.n_u)
            .field("n_v", &self.n_v)
            .field("periodic_v", &self.periodic_v)
            .field("step", &self.step)
            .finish()
    }
}

impl SurfaceSample {
    pub fn new(
        label: impl Into<String>,
        param: impl Fn(f64, f64) -> ChartPoint + Send + Sync + 'static,
        u_range: (f64, f64),
        v_range: (f64, f64),
        n_u: usize,
        n_v: usize,
    ) -> Self {
        Self { label: label.into(), param: Arc::new(param), u_range, v_range, n_u, n_v, periodic_v: false, step: 1e-3 }
    }

    pub fn periodic(mut self) -> Self {
        self.periodic_v = true;
        self.v_range = (0.0, 2.0 * PI);
        self
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.step = step;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn point(&self, u: f64, v: f64) -> ChartPoint {
        (self.param)(u, v)
    }

    pub fn u_nodes(&self) -> Vec<f64> {
        let (a, b) = self.u_range;
        let n = self.n_u.max(2);
        (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
    }

    /// Sample values of `v`; a periodic direction omits the repeated endpoint.
    pub fn v_nodes(&self) -> Vec<f64> {
        let (a, b) = self.v_range;
        if self.periodic_v {
            (0..self.n_v).map(|j| a + (b - a) * j as f64 / self.n_v as f64).collect()
        } else {
            let n = self.n_v.max(2);
            (0..n).map(|j| a + (b - a) * j as f64 / (n - 1) as f64).collect()
        }
    }
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn comb(terms: &[(f64, [f64; 3])]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (k, v) in terms {
        for i in 0..3 {
            out[i] += k * v[i];
        }
    }
    out
}

/// Mean curvature `H = (E·II₂₂ − 2F·II₁₂ + G·II₁₁)/(2(EG − F²))` of the surface
/// at `(u, v)`, with the second fundamental form taken from the covariant
/// second derivatives `∂_i∂_j P + Γ(∂_i P, ∂_j P)` of the parametrization.
/// Derivatives are second-order central differences with step `surf.step`.
pub fn mean_curvature_residual(surf: &SurfaceSample, u: f64, v: f64) -> Result<f64> {
    let h = surf.step;
    if !(h > 0.0) {
        return Err(NilError::NonPositiveStep(h));
    }
    let at = |du: f64, dv: f64| surf.point(u + du * h, v + dv * h).coords();
    let p = surf.point(u, v);
    let c = p.coords();
    let (up, um, vp, vm) = (at(1.0, 0.0), at(-1.0, 0.0), at(0.0, 1.0), at(0.0, -1.0));
    let (pp, pm, mp, mm) = (at(1.0, 1.0), at(1.0, -1.0), at(-1.0, 1.0), at(-1.0, -1.0));
    let pu = comb(&[(0.5 / h, up), (-0.5 / h, um)]);
    let pv = comb(&[(0.5 / h, vp), (-0.5 / h, vm)]);
    let h2 = h * h;
    let puu = comb(&[(1.0 / h2, up), (-2.0 / h2, c), (1.0 / h2, um)]);
    let pvv = comb(&[(1.0 / h2, vp), (-2.0 / h2, c), (1.0 / h2, vm)]);
    let k = 0.25 / h2;
    let puv = comb(&[(k, pp), (-k, pm), (-k, mp), (k, mm)]);

    let metric = metric_closed_form(&p);
    let gamma = christoffel_closed_form(&p);
    let (e, f, g) = (metric.inner(&pu, &pu), metric.inner(&pu, &pv), metric.inner(&pv, &pv));
    let det = e * g - f * f;
    if !(det > 1e-10) {
        return Err(NilError::DegenerateImmersion(det));
    }
    let n = cross(&pu, &pv);
    let inv = metric.inverse();
    let raised = [dot(&inv[0], &n), dot(&inv[1], &n), dot(&inv[2], &n)];
    let norm = dot(&n, &raised).sqrt();
    let second = |d2: &[f64; 3], a: &[f64; 3], b: &[f64; 3]| {
        let corr = gamma.contract(a, b);
        dot(&n, &[d2[0] + corr[0], d2[1] + corr[1], d2[2] + corr[2]]) / norm
    };
    let l = second(&puu, &pu, &pu);
    let m = second(&puv, &pu, &pv);
    let nn = second(&pvv, &pv, &pv);
    Ok((e * nn - 2.0 * f * m + g * l) / (2.0 * det))
}

/// The plane `ζ = 0` over `[−extent, extent]²`, parametrized by `(x, y)`.
pub fn plane_surface(extent: f64, n: usize) -> SurfaceSample {
    SurfaceSample::new("plane", |x, y| ChartPoint::new(x, y, 0.0), (-extent, extent), (-extent, extent), n, n)
}

/// Vertical cylinder `{r = radius}` of the given fiber height, parametrized by
/// `(ζ, θ)`.
pub fn cylinder_surface(radius: f64, height: f64, n_u: usize, n_v: usize) -> SurfaceSample {
    SurfaceSample::new(
        "cylinder",
        move |z, theta| {
            let (x, y) = polar_to_cartesian(radius, theta);
            ChartPoint::new(x, y, z)
        },
        (0.0, height),
        (0.0, 2.0 * PI),
        n_u,
        n_v,
    )
    .periodic()
}

/// Which coordinate of the profile `(t/2, t/2, h(t))` carries the height.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeightReading {
    /// `h` is the chart offset `ζ` above the plane.
    ChartOffset,
    /// `h` is the `(1,3)` matrix entry.
    MatrixEntry,
}

/// Surface of rotation of the catenoid profile `(t/2, t/2, h(t))`, `t0 ≤ t ≤ t_max`,
/// swept by the circle action. The profile is parametrized by `τ` with
/// `t = t0 + τ²`, which is smooth across the neck.
pub fn catenoid_surface(
    params: CatenoidParams,
    t_max: f64,
    reading: HeightReading,
    n_u: usize,
    n_v: usize,
) -> SurfaceSample {
    let t0 = params.t0;
    let param = move |tau: f64, theta: f64| {
        let t = t0 + tau * tau;
        let h = catenoid_height(&params, t, 1e-14).unwrap_or(f64::NAN);
        let profile = match reading {
            HeightReading::ChartOffset => ChartPoint::new(0.5 * t, 0.5 * t, h),
            HeightReading::MatrixEntry => ChartPoint::new(0.5 * t, 0.5 * t, h - t * t / 8.0),
        };
        circle_action(theta, &profile.to_group()).to_chart()
    };
    let label = match reading {
        HeightReading::ChartOffset => "catenoid",
        HeightReading::MatrixEntry => "catenoid (matrix-entry height)",
    };
    SurfaceSample::new(label, param, (0.0, (t_max - t0).max(0.0).sqrt()), (0.0, 2.0 * PI), n_u, n_v).periodic()
}

/// Map from the catenoid parameter `τ` to the geodesic radius `t = t0 + τ²`.
pub fn catenoid_tau(params: &CatenoidParams, t: f64) -> f64 {
    (t - params.t0).max(0.0).sqrt()
}

/// The graph of `u` over the plane as a surface in Nil₃, parametrized by
/// `(r, θ)`. Heights are converted from fiber arc length to the chart offset
/// `ζ = û/√2`; between nodes the field is interpolated by a natural cubic
/// spline in `r` along every ray and a periodic cubic spline in `θ`.
pub fn graph_embed(u: &ScalarField, grid: &AnnulusGrid) -> SurfaceSample {
    let rays: Vec<NaturalSpline> = (0..grid.n_theta())
        .map(|j| {
            let vals: Vec<f64> = (0..grid.n_r()).map(|i| u.get(i, j)).collect();
            NaturalSpline::new(grid.radii(), &vals)
        })
        .collect();
    let param = move |r: f64, theta: f64| {
        let ring: Vec<f64> = rays.iter().map(|s| s.eval(r)).collect();
        let height = PeriodicSpline::new(&ring).eval(theta);
        let p = SurfacePoint::from_polar(&PolarCoord { r, theta_pol: theta });
        ChartPoint::new(p.x, p.y, height / SQRT_2)
    };
    SurfaceSample::new("graph", param, (grid.r_min(), grid.r_max()), (0.0, 2.0 * PI), grid.n_r(), grid.n_theta())
        .periodic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::WarpFunction;

    #[test]
    fn plane_and_translates_are_minimal() {
        let plane = plane_surface(4.0, 9);
        for &x in &plane.u_nodes() {
            for &y in &plane.v_nodes() {
                assert!(mean_curvature_residual(&plane, x, y).unwrap().abs() < 1e-9);
            }
        }
        let grid = AnnulusGrid::uniform(1.0, 4.0, 12, 16).unwrap();
        let lifted = graph_embed(&ScalarField::constant(&grid, 3.0), &grid);
        for (r, t) in [(1.5, 0.2), (2.2, 3.0), (3.7, 5.5)] {
            assert!(mean_curvature_residual(&lifted, r, t).unwrap().abs() < 1e-8);
            assert!((lifted.point(r, t).zeta - 3.0 / SQRT_2).abs() < 1e-14);
        }
    }

    #[test]
    fn cylinder_has_half_the_circle_curvature() {
        for radius in [0.5, 1.0, 3.0] {
            let cyl = cylinder_surface(radius, 1.0, 4, 16);
            let hm = mean_curvature_residual(&cyl, 0.5, 1.1).unwrap().abs();
            assert!((hm - 0.5 * WarpFunction.circle_curvature(radius)).abs() < 1e-6, "{hm}");
        }
    }

    #[test]
    fn catenoid_minimal_only_in_chart_reading() {
        let params = CatenoidParams::new(3.0, 1.0).unwrap();
        let chart = catenoid_surface(params, 10.0, HeightReading::ChartOffset, 8, 8);
        let matrix = catenoid_surface(params, 10.0, HeightReading::MatrixEntry, 8, 8);
        for t in [1.1, 2.0, 6.0] {
            let tau = catenoid_tau(&params, t);
            assert!(mean_curvature_residual(&chart, tau, 0.7).unwrap().abs() < 1e-5);
            assert!(mean_curvature_residual(&matrix, tau, 0.7).unwrap().abs() > 1e-2);
        }
    }

    #[test]
    fn degenerate_parametrization_rejected() {
        let collapsed = SurfaceSample::new("point", |_, _| ChartPoint::ORIGIN, (0.0, 1.0), (0.0, 1.0), 2, 2);
        assert!(matches!(mean_curvature_residual(&collapsed, 0.5, 0.5), Err(NilError::DegenerateImmersion(_))));
    }
}
