//! Levi-Civita connection of the balanced metric and the geodesic flow.

use serde::{Deserialize, Serialize};

use crate::error::{NilError, Result};
use crate::group::{ChartPoint, TangentVector};
use crate::metric::metric_closed_form;

/// Frame coefficients of the connection: `∇_{E_i} E_j = Σ_k gamma[k][i][j] E_k`
/// with `(E_1, E_2, E_3) = (X, Y, Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChristoffelAtPoint {
    pub gamma: [[[f64; 3]; 3]; 3],
}

impl ChristoffelAtPoint {
    pub fn zero() -> Self {
        Self { gamma: [[[0.0; 3]; 3]; 3] }
    }

    /// Frame components of `∇_u w` for the constant-coefficient fields `u`, `w`.
    pub fn contract(&self, u: &[f64; 3], w: &[f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (k, o) in out.iter_mut().enumerate() {
            for i in 0..3 {
                for j in 0..3 {
                    *o += self.gamma[k][i][j] * u[i] * w[j];
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &ChristoffelAtPoint) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    worst = worst.max((self.gamma[k][i][j] - other.gamma[k][i][j]).abs());
                }
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs_diff(&Self::zero())
    }
}

/// Closed-form connection coefficients. Every coefficient carrying a `Z`
/// index vanishes identically.
pub fn christoffel_closed_form(p: &ChartPoint) -> ChristoffelAtPoint {
    let (x, y) = (p.x, p.y);
    let d = 2.0 * x * x + 2.0 * y * y + 8.0;
    let mut g = [[[0.0; 3]; 3]; 3];
    // ∇_X X
    g[0][0][0] = -x * y * y / d;
    g[1][0][0] = -(4.0 * y + y * y * y) / d;
    // ∇_Y X = ∇_X Y
    let mixed_x = (2.0 * y + x * x * y) / d;
    let mixed_y = (2.0 * x + x * y * y) / d;
    g[0][0][1] = mixed_x;
    g[0][1][0] = mixed_x;
    g[1][0][1] = mixed_y;
    g[1][1][0] = mixed_y;
    // ∇_Y Y
    g[0][1][1] = -(4.0 * x + x * x * x) / d;
    g[1][1][1] = -x * x * y / d;
    ChristoffelAtPoint { gamma: g }
}

/// Connection coefficients from the Koszul formula, with central finite
/// differences of the closed-form metric at step `h`.
pub fn christoffel_from_metric(p: &ChartPoint, h: f64) -> Result<ChristoffelAtPoint> {
    if !(h > 0.0) {
        return Err(NilError::NonPositiveStep(h));
    }
    // dg[l][i][j] = ∂_l g_ij
    let mut dg = [[[0.0; 3]; 3]; 3];
    for (l, slot) in dg.iter_mut().enumerate() {
        let mut e = [0.0; 3];
        e[l] = 1.0;
        let plus = metric_closed_form(&p.offset(e, h)).matrix();
        let minus = metric_closed_form(&p.offset(e, -h)).matrix();
        for i in 0..3 {
            for j in 0..3 {
                slot[i][j] = (plus[i][j] - minus[i][j]) / (2.0 * h);
            }
        }
    }
    let ginv = metric_closed_form(p).inverse();
    let mut gamma = [[[0.0; 3]; 3]; 3];
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for l in 0..3 {
                    s += ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                }
                gamma[k][i][j] = 0.5 * s;
            }
        }
    }
    Ok(ChristoffelAtPoint { gamma })
}

/// Acceleration `−Γ(v, v)` demanded by the geodesic equation.
pub fn geodesic_ode_rhs(p: &ChartPoint, v: &TangentVector) -> TangentVector {
    let acc = christoffel_closed_form(p).contract(&v.components(), &v.components());
    TangentVector::from_components(*p, acc.map(|a| -a))
}

/// Geodesic-equation residual `ẍ + Γ(ẋ, ẋ)` for a curve with known position,
/// velocity and coordinate acceleration, under an arbitrary connection.
pub fn geodesic_residual_with(gamma: &ChristoffelAtPoint, velocity: &[f64; 3], accel: &[f64; 3]) -> f64 {
    let g = gamma.contract(velocity, velocity);
    (0..3).map(|k| (accel[k] + g[k]).powi(2)).sum::<f64>().sqrt()
}

/// Classical fixed-step fourth-order integration of the geodesic flow.
///
/// Returns `n_steps + 1` states including the initial one.
pub fn integrate_geodesic(
    p0: &ChartPoint,
    v0: &TangentVector,
    t_final: f64,
    n_steps: usize,
) -> Result<Vec<(ChartPoint, TangentVector)>> {
    if n_steps == 0 {
        return Err(NilError::InvalidParameter("n_steps must be at least 1".into()));
    }
    let dt = t_final / n_steps as f64;
    let mut state = [p0.x, p0.y, p0.zeta, v0.a, v0.b, v0.c];
    let mut path = Vec::with_capacity(n_steps + 1);
    let pack = |s: &[f64; 6]| {
        let p = ChartPoint::new(s[0], s[1], s[2]);
        (p, TangentVector::new(p, s[3], s[4], s[5]))
    };
    path.push(pack(&state));
    for _ in 0..n_steps {
        let k1 = flow(&state);
        let k2 = flow(&axpy(&state, 0.5 * dt, &k1));
        let k3 = flow(&axpy(&state, 0.5 * dt, &k2));
        let k4 = flow(&axpy(&state, dt, &k3));
        for i in 0..6 {
            state[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        path.push(pack(&state));
    }
    Ok(path)
}

fn flow(s: &[f64; 6]) -> [f64; 6] {
    let p = ChartPoint::new(s[0], s[1], s[2]);
    let v = [s[3], s[4], s[5]];
    let g = christoffel_closed_form(&p).contract(&v, &v);
    [v[0], v[1], v[2], -g[0], -g[1], -g[2]]
}

fn axpy(s: &[f64; 6], h: f64, k: &[f64; 6]) -> [f64; 6] {
    let mut out = *s;
    for i in 0..6 {
        out[i] += h * k[i];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::metric_closed_form;
    use approx::assert_abs_diff_eq;

    #[test]
    fn closed_form_vanishes_at_origin() {
        assert_eq!(christoffel_closed_form(&ChartPoint::ORIGIN).max_abs(), 0.0);
    }

    #[test]
    fn closed_form_at_one_one() {
        let g = christoffel_closed_form(&ChartPoint::new(1.0, 1.0, 0.0));
        assert_abs_diff_eq!(g.gamma[0][0][0], -1.0 / 12.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g.gamma[1][0][0], -5.0 / 12.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g.gamma[0][1][0], 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(g.gamma[1][1][0], 0.25, epsilon = 1e-15);
    }

    #[test]
    fn z_index_coefficients_are_exactly_zero() {
        let g = christoffel_closed_form(&ChartPoint::new(-2.3, 4.1, 7.0));
        for k in 0..3 {
            for i in 0..3 {
                assert_eq!(g.gamma[k][i][2], 0.0);
                assert_eq!(g.gamma[k][2][i], 0.0);
                assert_eq!(g.gamma[2][k][i], 0.0);
            }
        }
    }

    #[test]
    fn torsion_free() {
        let g = christoffel_closed_form(&ChartPoint::new(0.7, -1.9, 0.0));
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(g.gamma[k][i][j], g.gamma[k][j][i]);
                }
            }
        }
    }

    #[test]
    fn koszul_oracle_examples() {
        let o = christoffel_from_metric(&ChartPoint::ORIGIN, 1e-4).unwrap();
        assert!(o.max_abs() < 1e-7);
        for p in [ChartPoint::new(1.0, 1.0, 0.0), ChartPoint::new(2.0, -1.0, 0.0)] {
            let fd = christoffel_from_metric(&p, 1e-4).unwrap();
            assert!(fd.max_abs_diff(&christoffel_closed_form(&p)) < 1e-6);
        }
    }

    #[test]
    fn koszul_rejects_bad_step() {
        assert_eq!(christoffel_from_metric(&ChartPoint::ORIGIN, 0.0), Err(NilError::NonPositiveStep(0.0)));
        assert!(christoffel_from_metric(&ChartPoint::ORIGIN, -1.0).is_err());
    }

    #[test]
    fn metric_compatibility() {
        let h = 1e-4;
        for p in [ChartPoint::new(0.3, -1.2, 0.0), ChartPoint::new(2.5, 1.5, -3.0)] {
            let gamma = christoffel_closed_form(&p);
            let m = metric_closed_form(&p);
            for w in 0..3 {
                let mut e = [0.0; 3];
                e[w] = 1.0;
                let plus = metric_closed_form(&p.offset(e, h)).matrix();
                let minus = metric_closed_form(&p.offset(e, -h)).matrix();
                for i in 0..3 {
                    for j in 0..3 {
                        let lhs = (plus[i][j] - minus[i][j]) / (2.0 * h);
                        let mut ei = [0.0; 3];
                        ei[i] = 1.0;
                        let mut ej = [0.0; 3];
                        ej[j] = 1.0;
                        let rhs = m.inner(&gamma.contract(&e, &ei), &ej) + m.inner(&ei, &gamma.contract(&e, &ej));
                        assert!((lhs - rhs).abs() < 1e-6, "w={w} i={i} j={j}: {lhs} vs {rhs}");
                    }
                }
            }
        }
    }

    #[test]
    fn z_is_killing() {
        let z = [0.0, 0.0, 1.0];
        for p in [ChartPoint::new(1.0, 2.0, 0.0), ChartPoint::new(-4.0, 0.5, 1.0)] {
            let gamma = christoffel_closed_form(&p);
            let m = metric_closed_form(&p);
            let (u, v) = ([0.3, -1.0, 2.0], [1.5, 0.2, -0.7]);
            let k = m.inner(&gamma.contract(&u, &z), &v) + m.inner(&gamma.contract(&v, &z), &u);
            assert!(k.abs() <= 1e-12);
        }
    }

    #[test]
    fn rhs_examples() {
        let v = TangentVector::new(ChartPoint::ORIGIN, 0.3, -2.0, 1.0);
        let a = geodesic_ode_rhs(&ChartPoint::ORIGIN, &v);
        assert_eq!(a.components(), [0.0, 0.0, 0.0]);

        for t in [0.5, 1.0, 3.0, -2.0] {
            let p = ChartPoint::new(t / 2.0, t / 2.0, 0.0);
            let a = geodesic_ode_rhs(&p, &TangentVector::new(p, 0.5, 0.5, 0.0));
            for c in a.components() {
                assert!(c.abs() < 1e-15);
            }
        }

        let p = ChartPoint::new(1.0, 1.0, 0.0);
        let a = geodesic_ode_rhs(&p, &TangentVector::new(p, 1.0, 0.0, 0.0));
        assert_abs_diff_eq!(a.a, 1.0 / 12.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a.b, 5.0 / 12.0, epsilon = 1e-15);
        assert_eq!(a.c, 0.0);
    }

    #[test]
    fn diagonal_geodesic_is_unit_speed() {
        for i in 0..50 {
            let t = -10.0 + 0.4 * i as f64;
            let m = metric_closed_form(&ChartPoint::new(t / 2.0, t / 2.0, 0.0));
            assert_abs_diff_eq!(m.norm(&[0.5, 0.5, 0.0]), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn integrate_diagonal() {
        let v0 = TangentVector::new(ChartPoint::ORIGIN, 0.5, 0.5, 0.0);
        let path = integrate_geodesic(&ChartPoint::ORIGIN, &v0, 1.0, 100).unwrap();
        assert_eq!(path.len(), 101);
        let (end, _) = path[100];
        assert!((end.x - 0.5).abs() < 1e-8 && (end.y - 0.5).abs() < 1e-8 && end.zeta.abs() < 1e-8);
    }

    #[test]
    fn integrate_vertical() {
        let s = 1.0 / 2f64.sqrt();
        let v0 = TangentVector::new(ChartPoint::ORIGIN, 0.0, 0.0, s);
        let path = integrate_geodesic(&ChartPoint::ORIGIN, &v0, 1.0, 10).unwrap();
        let (end, _) = path[10];
        assert_abs_diff_eq!(end.zeta, s, epsilon = 1e-14);
        assert_eq!((end.x, end.y), (0.0, 0.0));
    }

    #[test]
    fn integrate_tangent_to_plane_stays_in_plane() {
        let v0 = TangentVector::new(ChartPoint::ORIGIN, 0.6, -0.2, 0.0);
        let path = integrate_geodesic(&ChartPoint::ORIGIN, &v0, 10.0, 1000).unwrap();
        assert!(path.iter().all(|(p, _)| p.zeta.abs() <= 1e-8));
    }

    #[test]
    fn speed_is_conserved() {
        let p0 = ChartPoint::new(0.5, -1.0, 0.0);
        let v0 = TangentVector::new(p0, 0.4, 0.3, 0.2);
        let speed = |p: &ChartPoint, v: &TangentVector| metric_closed_form(p).norm(&v.components());
        let s0 = speed(&p0, &v0);
        let path = integrate_geodesic(&p0, &v0, 5.0, 500).unwrap();
        for (p, v) in &path {
            assert!((speed(p, v) - s0).abs() < 1e-8);
        }
    }

    #[test]
    fn zero_steps_rejected() {
        let v0 = TangentVector::new(ChartPoint::ORIGIN, 1.0, 0.0, 0.0);
        assert!(integrate_geodesic(&ChartPoint::ORIGIN, &v0, 1.0, 0).is_err());
    }
}
