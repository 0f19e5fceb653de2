use super::{RadialProfile, MAX_PANELS};
use crate::error::{NilError, Result};
use crate::quadrature::integrate;
use crate::surface::WarpFunction;

/// Rotationally symmetric minimal graph over the annulus `r_in ≤ r ≤ r_out`,
/// determined by its flux `g(r)·û′/√(1 + û′²) = flux` and inner height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialMseSolution {
    pub r_in: f64,
    pub r_out: f64,
    pub u_in: f64,
    pub flux: f64,
}

impl RadialMseSolution {
    /// The radial solution leaving the inner circle with slope `slope`.
    pub fn from_boundary_slope(r_in: f64, r_out: f64, u_in: f64, slope: f64) -> Self {
        let flux = WarpFunction.g(r_in) * slope / (1.0 + slope * slope).sqrt();
        Self { r_in, r_out, u_in, flux }
    }

    /// `û′(r) = flux / √(g(r)² − flux²)`.
    pub fn derivative(&self, r: f64) -> f64 {
        let d = gap(self.r_in, self.flux, r);
        if d <= 0.0 {
            self.flux.signum() * f64::INFINITY
        } else {
            self.flux / d.sqrt()
        }
    }

    /// `û(r)` to absolute tolerance `tol`.
    pub fn value(&self, r: f64, tol: f64) -> Result<f64> {
        if r < self.r_in {
            return Err(NilError::InvalidParameter(format!("radius {r} below inner radius {}", self.r_in)));
        }
        Ok(self.u_in + height_gain(self.r_in, self.flux, r, tol)?)
    }

    pub fn profile(&self, nodes: &[f64], tol: f64) -> Result<RadialProfile> {
        let values = nodes.iter().map(|&r| self.value(r, tol)).collect::<Result<Vec<_>>>()?;
        let derivs = nodes.iter().map(|&r| self.derivative(r)).collect();
        RadialProfile::new(nodes.to_vec(), values, derivs)
    }

    /// Uniformly spaced profile with `n + 1` nodes.
    pub fn uniform_profile(&self, n: usize, tol: f64) -> Result<RadialProfile> {
        let nodes: Vec<f64> = (0..=n).map(|i| self.r_in + (self.r_out - self.r_in) * i as f64 / n as f64).collect();
        self.profile(&nodes, tol)
    }
}

/// `g(r)² − k²`, written to stay accurate when `|k| = g(r_in)` and `r → r_in`.
fn gap(r_in: f64, k: f64, r: f64) -> f64 {
    let g_in = WarpFunction.g(r_in);
    let d0 = (g_in - k.abs()) * (g_in + k.abs());
    let rise = (r - r_in) * (r + r_in) * (1.0 + (r * r + r_in * r_in) / 8.0);
    d0 + rise
}

/// `∫_{r_in}^{r} k/√(g² − k²) ds` after `s = r_in + τ²`.
fn height_gain(r_in: f64, k: f64, r: f64, tol: f64) -> Result<f64> {
    if k == 0.0 || r == r_in {
        return Ok(0.0);
    }
    let g_in = WarpFunction.g(r_in);
    let d0 = (g_in - k.abs()).max(0.0) * (g_in + k.abs());
    let f = |tau: f64| {
        let s = r_in + tau * tau;
        let b = (s + r_in) * (1.0 + (s * s + r_in * r_in) / 8.0);
        2.0 * k / (d0 / (tau * tau) + b).sqrt()
    };
    Ok(integrate(f, 0.0, (r - r_in).sqrt(), tol, MAX_PANELS)?.value)
}

/// Solves the radial Dirichlet problem `û(r_in) = u_in`, `û(r_out) = u_out`
/// by bisection on the flux, `|flux| ≤ g(r_in)`.
pub fn radial_mse_solve(r_in: f64, r_out: f64, u_in: f64, u_out: f64, tol: f64) -> Result<RadialMseSolution> {
    if !(r_in > 0.0 && r_out > r_in) {
        return Err(NilError::InvalidParameter(format!("need 0 < r_in < r_out (got {r_in}, {r_out})")));
    }
    if !(tol > 0.0) {
        return Err(NilError::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let target = u_out - u_in;
    let quad_tol = (0.01 * tol).max(1e-15);
    let solution = |flux: f64| RadialMseSolution { r_in, r_out, u_in, flux };
    if target == 0.0 {
        return Ok(solution(0.0));
    }
    let g_in = WarpFunction.g(r_in);
    let sign = target.signum();
    let max_gain = height_gain(r_in, g_in, r_out, quad_tol)?;
    if target.abs() > max_gain + tol {
        return Err(NilError::NoAdmissibleFlux { requested: target.abs(), max_attainable: max_gain });
    }
    if target.abs() >= max_gain {
        return Ok(solution(sign * g_in));
    }
    // Bisect on |k| in [0, g_in]; the gain is odd and increasing in k.
    let (mut lo, mut hi) = (0.0, g_in);
    let mut k = 0.5 * g_in;
    for _ in 0..200 {
        k = 0.5 * (lo + hi);
        let gain = height_gain(r_in, k, r_out, quad_tol)?;
        let miss = gain - target.abs();
        if miss.abs() <= 0.1 * tol || k <= lo || k >= hi {
            break;
        }
        if miss < 0.0 {
            lo = k;
        } else {
            hi = k;
        }
    }
    Ok(solution(sign * k))
}
