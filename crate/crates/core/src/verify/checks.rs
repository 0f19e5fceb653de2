//! Measured quantities behind each verification claim. Every function returns
//! the worst deviation found on a deterministic sample.

use std::f64::consts::PI;

use crate::connection::{
    christoffel_closed_form, christoffel_from_metric, geodesic_residual_with, integrate_geodesic, ChristoffelAtPoint,
};
use crate::error::Result;
use crate::group::{ChartPoint, GroupElement, TangentVector};
use crate::metric::{metric_closed_form, metric_from_translations};
use crate::surface::{
    circle_action, circle_action_as_printed, distance_to_identity, gaussian_curvature_riemann, geodesic_closed_form,
    orbit_length_over_two_pi, second_fundamental_form_t, splitting_inverse, splitting_isometry, splitting_pullback,
    CenterElement, SurfacePoint, WarpFunction,
};

/// Points of the additive recurrence with golden-ratio steps, mapped to
/// `[lo, hi]`; deterministic and well spread.
pub fn spread_points(n: usize, dim: usize, lo: f64, hi: f64) -> Vec<Vec<f64>> {
    let steps = [0.618_033_988_749_894_9, 0.754_877_666_246_692_8, 0.569_840_290_998_053_3, 0.438_579_160_267_938_1];
    (0..n).map(|k| (0..dim).map(|d| lo + (hi - lo) * (0.5 + (k + 1) as f64 * steps[d % 4]).fract()).collect()).collect()
}

/// Max coefficient error of the translation-built metric against the closed
/// form on an `n × n` grid over `[−extent, extent]²`.
pub fn metric_equivalence_error(n: usize, extent: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let x = -extent + 2.0 * extent * i as f64 / (n - 1) as f64;
            let y = -extent + 2.0 * extent * j as f64 / (n - 1) as f64;
            let p = ChartPoint::new(x, y, 0.3);
            let a = metric_from_translations(&p).matrix();
            let b = metric_closed_form(&p).matrix();
            for r in 0..3 {
                for c in 0..3 {
                    worst = worst.max((a[r][c] - b[r][c]).abs());
                }
            }
        }
    }
    worst
}

/// Max difference between the finite-difference Koszul connection (step `h`)
/// and the closed form at `n` points of `[−extent, extent]²`.
pub fn connection_certification_error(n: usize, extent: f64, h: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for q in spread_points(n, 3, -extent, extent) {
        let p = ChartPoint::new(q[0], q[1], q[2]);
        worst = worst.max(christoffel_from_metric(&p, h)?.max_abs_diff(&christoffel_closed_form(&p)));
    }
    Ok(worst)
}

/// Max entry of the second fundamental form of the plane at `n` points.
pub fn plane_second_fundamental_form(n: usize, extent: f64) -> f64 {
    spread_points(n, 2, -extent, extent)
        .iter()
        .map(|q| {
            let ii = second_fundamental_form_t(&SurfacePoint::new(q[0], q[1]));
            ii.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()))
        })
        .fold(0.0, f64::max)
}

/// Max `|ζ|` along numerically integrated geodesics leaving the identity
/// tangent to the plane in `n_dirs` directions, with base point `(x0, y0)` and
/// `n_steps` fourth-order steps over `[0, t_final]`.
pub fn tangent_geodesic_drift(n_dirs: usize, t_final: f64, n_steps: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 0..n_dirs {
        let a = 2.0 * PI * k as f64 / n_dirs as f64;
        for base in [ChartPoint::ORIGIN, ChartPoint::new(0.7, -0.4, 0.0)] {
            let v0 = TangentVector::new(base, 0.5 * a.cos(), 0.5 * a.sin(), 0.0);
            for (p, _) in integrate_geodesic(&base, &v0, t_final, n_steps)? {
                worst = worst.max(p.zeta.abs());
            }
        }
    }
    Ok(worst)
}

/// Max deviation of the `Ψ`-pullback from the product of the plane metric
/// and `2·dt²`, plus the round-trip error of `Ψ`.
pub fn splitting_defect(n: usize, extent: f64) -> (f64, f64) {
    let (mut metric_err, mut trip_err) = (0.0f64, 0.0f64);
    for q in spread_points(n, 3, -extent, extent) {
        let p = SurfacePoint::new(q[0], q[1]);
        let c = CenterElement { t: q[2] };
        let pull = splitting_pullback(&p, &c);
        let m = metric_closed_form(&p.to_chart());
        let block = [[m.exx, m.exy, 0.0], [m.exy, m.eyy, 0.0], [0.0, 0.0, 2.0]];
        for r in 0..3 {
            for s in 0..3 {
                metric_err = metric_err.max((pull[r][s] - block[r][s]).abs());
            }
        }
        let (p2, c2) = splitting_inverse(&splitting_isometry(&p, &c));
        trip_err = trip_err.max((p2.x - p.x).abs()).max((p2.y - p.y).abs()).max((c2.t - c.t).abs());
    }
    (metric_err, trip_err)
}

/// Chart-coordinate differential of a map of Nil₃, by central differences.
fn differential(map: &dyn Fn(&GroupElement) -> GroupElement, p: &ChartPoint, h: f64) -> [[f64; 3]; 3] {
    let mut d = [[0.0; 3]; 3];
    for col in 0..3 {
        let mut dir = [0.0; 3];
        dir[col] = 1.0;
        let plus = map(&p.offset(dir, h).to_group()).to_chart().coords();
        let minus = map(&p.offset(dir, -h).to_group()).to_chart().coords();
        for row in 0..3 {
            d[row][col] = (plus[row] - minus[row]) / (2.0 * h);
        }
    }
    d
}

/// Measured properties of the circle action.
#[derive(Debug, Clone, Copy)]
pub struct CircleActionDefects {
    /// `|dA*⟨,⟩ − ⟨,⟩|` over frame vectors.
    pub isometry: f64,
    /// `|ζ|` of images of plane points.
    pub plane: f64,
    /// Displacement of center elements.
    pub center: f64,
    /// `|A(θ₁, A(θ₂, g)) − A(θ₁+θ₂, g)|`.
    pub composition: f64,
    /// `|ζ|` of images of plane points when the printed formula is read
    /// entirely in matrix coordinates.
    pub matrix_reading_plane: f64,
    /// Composition defect of that reading.
    pub matrix_reading_composition: f64,
}

pub fn circle_action_defects(n: usize, extent: f64, h: f64) -> CircleActionDefects {
    let mut d = CircleActionDefects {
        isometry: 0.0,
        plane: 0.0,
        center: 0.0,
        composition: 0.0,
        matrix_reading_plane: 0.0,
        matrix_reading_composition: 0.0,
    };
    let dist =
        |a: &GroupElement, b: &GroupElement| (a.x - b.x).abs().max((a.y - b.y).abs()).max((a.z_mat - b.z_mat).abs());
    for q in spread_points(n, 5, -extent, extent) {
        let theta = q[3] * PI / extent;
        let theta2 = q[4] * PI / extent;
        let p = ChartPoint::new(q[0], q[1], q[2]);
        let g = p.to_group();
        let image = circle_action(theta, &g).to_chart();
        let jac = differential(&|x| circle_action(theta, x), &p, h);
        let m0 = metric_closed_form(&p);
        let m1 = metric_closed_form(&image);
        for a in 0..3 {
            for b in 0..3 {
                let ua = [jac[0][a], jac[1][a], jac[2][a]];
                let ub = [jac[0][b], jac[1][b], jac[2][b]];
                let e0 = m0.matrix()[a][b];
                d.isometry = d.isometry.max((m1.inner(&ua, &ub) - e0).abs());
            }
        }
        let on_plane = SurfacePoint::new(q[0], q[1]).to_group();
        d.plane = d.plane.max(circle_action(theta, &on_plane).to_chart().zeta.abs());
        let center = GroupElement::new(0.0, 0.0, q[2]);
        d.center = d.center.max(dist(&circle_action(theta, &center), &center));
        let twice = circle_action(theta, &circle_action(theta2, &g));
        d.composition = d.composition.max(dist(&twice, &circle_action(theta + theta2, &g)));
        d.matrix_reading_plane =
            d.matrix_reading_plane.max(circle_action_as_printed(theta, &on_plane).to_chart().zeta.abs());
        let twice_printed = circle_action_as_printed(theta, &circle_action_as_printed(theta2, &g));
        d.matrix_reading_composition =
            d.matrix_reading_composition.max(dist(&twice_printed, &circle_action_as_printed(theta + theta2, &g)));
    }
    d
}

/// Max residual `|Γ(γ′, γ′)|` of the closed-form geodesics (which are
/// straight in the chart) on an `n_theta × n_t` grid with `t ∈ [0, t_max]`,
/// and max `| r(γ_θ(t)) − |t| |`.
pub fn closed_form_geodesic_defects(n_theta: usize, n_t: usize, t_max: f64) -> (f64, f64) {
    let (mut residual, mut distance) = (0.0f64, 0.0f64);
    for a in 0..n_theta {
        let theta = 2.0 * PI * a as f64 / n_theta as f64;
        let vel = [0.5 * (theta.cos() - theta.sin()), 0.5 * (theta.sin() + theta.cos()), 0.0];
        for b in 0..n_t {
            let t = t_max * b as f64 / (n_t - 1) as f64;
            let (p, _) = geodesic_closed_form(theta, t);
            let gamma = christoffel_closed_form(&p.to_chart());
            residual = residual.max(geodesic_residual_with(&gamma, &vel, &[0.0; 3]));
            distance = distance.max((distance_to_identity(&p) - t.abs()).abs());
        }
    }
    (residual, distance)
}

/// Max distance between numerically integrated geodesics from the identity
/// and the closed form at `t = 1`.
pub fn geodesic_integration_error(n_theta: usize, n_steps: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for a in 0..n_theta {
        let theta = 2.0 * PI * a as f64 / n_theta as f64;
        let v0 = TangentVector::new(
            ChartPoint::ORIGIN,
            0.5 * (theta.cos() - theta.sin()),
            0.5 * (theta.sin() + theta.cos()),
            0.0,
        );
        let path = integrate_geodesic(&ChartPoint::ORIGIN, &v0, 1.0, n_steps)?;
        let end = path.last().expect("nonempty").0;
        let (exact, _) = geodesic_closed_form(theta, 1.0);
        worst = worst.max((end.x - exact.x).abs()).max((end.y - exact.y).abs()).max(end.zeta.abs());
    }
    Ok(worst)
}

/// Max `| ‖γ′‖ − 1 |` along the diagonal `γ(t) = φ(t/2, t/2, 0)`, `t ∈ [−t_max, t_max]`.
pub fn diagonal_speed_defect(n: usize, t_max: f64) -> f64 {
    (0..n)
        .map(|k| {
            let t = -t_max + 2.0 * t_max * k as f64 / (n - 1) as f64;
            let p = ChartPoint::new(0.5 * t, 0.5 * t, 0.0);
            (metric_closed_form(&p).norm(&[0.5, 0.5, 0.0]) - 1.0).abs()
        })
        .fold(0.0, f64::max)
}

/// Max geodesic residual along the diagonal geodesic under the connection
/// supplied by `gamma_at`.
pub fn diagonal_geodesic_residual(gamma_at: impl Fn(&ChartPoint) -> ChristoffelAtPoint, n: usize, t_max: f64) -> f64 {
    (0..n)
        .map(|k| {
            let t = t_max * k as f64 / (n - 1) as f64;
            let p = ChartPoint::new(0.5 * t, 0.5 * t, 0.0);
            geodesic_residual_with(&gamma_at(&p), &[0.5, 0.5, 0.0], &[0.0; 3])
        })
        .fold(0.0, f64::max)
}

/// Curvature oracles at radius `r` on the ray of polar angle `angle`:
/// `(finite-difference Riemann tensor, −g″/g)`.
pub fn curvature_oracles(r: f64, angle: f64, h: f64) -> Result<(f64, f64)> {
    let p = SurfacePoint::new(r / 2f64.sqrt() * angle.cos(), r / 2f64.sqrt() * angle.sin());
    Ok((gaussian_curvature_riemann(&p, h)?, WarpFunction.curvature(r)))
}

/// Max `|orbit length/2π − g(r)|` over the given radii.
pub fn warp_orbit_error(radii: &[f64], n: usize) -> f64 {
    radii.iter().map(|&r| (orbit_length_over_two_pi(r, n) - WarpFunction.g(r)).abs()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spread_points_stay_in_range() {
        let pts = spread_points(100, 3, -5.0, 5.0);
        assert_eq!(pts.len(), 100);
        assert!(pts.iter().flatten().all(|v| (-5.0..=5.0).contains(v)));
        assert!(pts[0] != pts[1]);
    }

    #[test]
    fn perturbing_a_coefficient_is_detected() {
        let exact = diagonal_geodesic_residual(christoffel_closed_form, 50, 10.0);
        assert!(exact < 1e-12);
        for k in 0..3 {
            for (i, j) in [(0, 0), (0, 1), (1, 1)] {
                let perturbed = diagonal_geodesic_residual(
                    |p| {
                        let mut g = christoffel_closed_form(p);
                        g.gamma[k][i][j] += 1e-3;
                        if i != j {
                            g.gamma[k][j][i] += 1e-3;
                        }
                        g
                    },
                    50,
                    10.0,
                );
                assert!(perturbed > 1e-4, "Γ[{k}][{i}][{j}]: {perturbed}");
            }
        }
    }

    #[test]
    fn printed_matrix_reading_leaves_the_plane() {
        let d = circle_action_defects(20, 3.0, 1e-5);
        assert!(d.plane == 0.0 && d.center == 0.0);
        assert!(d.isometry < 1e-8 && d.composition < 1e-12);
        assert!(d.matrix_reading_plane > 0.1 && d.matrix_reading_composition > 0.1);
    }
}
