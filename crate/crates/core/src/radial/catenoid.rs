use std::f64::consts::SQRT_2;

use super::{RadialProfile, MAX_PANELS};
use crate::error::{NilError, Result};
use crate::quadrature::integrate;
use crate::surface::WarpFunction;

/// Flux parameter and neck radius of a catenoid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatenoidParams {
    pub c: f64,
    pub t0: f64,
}

/// Necks within this distance of the minimal neck use the singular
/// substitution.
const NECK_SWITCH: f64 = 1e-6;

impl CatenoidParams {
    pub fn new(c: f64, t0: f64) -> Result<Self> {
        let min = t0_min(c)?;
        if t0 < min * (1.0 - 1e-12) {
            return Err(NilError::InvalidParameter(format!("neck {t0} below the minimal neck {min} for c = {c}")));
        }
        Ok(Self { c, t0 })
    }

    /// The catenoid with the smallest admissible neck.
    pub fn minimal(c: f64) -> Result<Self> {
        Ok(Self { c, t0: t0_min(c)? })
    }

    /// Constant of the radial first integral, `c/(2√2)`.
    pub fn flux(&self) -> f64 {
        self.c / (2.0 * SQRT_2)
    }

    fn neck_slack(&self) -> f64 {
        let s0 = self.t0 * self.t0;
        (s0 * (s0 + 8.0) - self.c * self.c).max(0.0)
    }

    /// `û′(t) = c / √(t²(t²+8) − c²)`.
    pub fn slope(&self, t: f64) -> f64 {
        let p = t * t * (t * t + 8.0) - self.c * self.c;
        if p <= 0.0 {
            f64::INFINITY
        } else {
            self.c / p.sqrt()
        }
    }
}

/// Smallest admissible neck `√(√(c² + 16) − 4)`.
pub fn t0_min(c: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(NilError::InvalidParameter(format!("flux parameter must be positive, got {c}")));
    }
    // √(c²+16) − 4 written without cancellation.
    Ok((c * c / ((c * c + 16.0).sqrt() + 4.0)).sqrt())
}

/// `∫_{t0}^{t} ds / √(s²(s²+8) − c²)` after `s² = t0² + τ²`, which turns
/// the inverse-square-root endpoint singularity at a minimal neck into a
/// smooth integrand.
pub(crate) fn neck_integral_substituted(p: &CatenoidParams, t: f64, tol: f64) -> Result<f64> {
    let s0 = p.t0 * p.t0;
    let slack = p.neck_slack();
    let tau_max = (t * t - s0).max(0.0).sqrt();
    let f = |tau: f64| {
        let s2 = s0 + tau * tau;
        let a = 2.0 * s0 + 8.0 + tau * tau;
        1.0 / (s2.sqrt() * (slack / (tau * tau) + a).sqrt())
    };
    Ok(integrate(f, 0.0, tau_max, tol, MAX_PANELS)?.value)
}

pub(crate) fn neck_integral_plain(p: &CatenoidParams, t: f64, tol: f64) -> Result<f64> {
    let c2 = p.c * p.c;
    let f = |s: f64| 1.0 / (s * s * (s * s + 8.0) - c2).sqrt();
    Ok(integrate(f, p.t0, t, tol, MAX_PANELS)?.value)
}

/// Chart offset `ζ = h(t)` of the catenoid profile curve above `(t/2, t/2)`,
/// `h(t) = (c/√2) ∫_{t0}^{t} ds / √(s²(s²+8) − c²)`. `t` is also the
/// distance to the identity of the profile point.
pub fn catenoid_height(params: &CatenoidParams, t: f64, tol: f64) -> Result<f64> {
    if t < params.t0 {
        return Err(NilError::BelowNeck { t, t0: params.t0 });
    }
    if !(tol > 0.0) {
        return Err(NilError::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    if t == params.t0 {
        return Ok(0.0);
    }
    let scale = params.c / SQRT_2;
    let inner_tol = tol / scale;
    let integral = if params.t0 <= t0_min(params.c)? + NECK_SWITCH {
        neck_integral_substituted(params, t, inner_tol)?
    } else {
        neck_integral_plain(params, t, inner_tol)?
    };
    Ok(scale * integral)
}

/// Flux `g(r)·û′/√(1 + û′²)` along the profile, with `û′` obtained by
/// Richardson-extrapolated central differences of [`catenoid_height`].
pub fn catenoid_flux_check(params: &CatenoidParams, r: f64) -> Result<f64> {
    if r <= params.t0 {
        return Err(NilError::BelowNeck { t: r, t0: params.t0 });
    }
    let tol = 1e-15;
    let delta = (2e-3f64).min(0.25 * (r - params.t0));
    let h = |t: f64| catenoid_height(params, t, tol);
    let d1 = (h(r + delta)? - h(r - delta)?) / (2.0 * delta);
    let d2 = (h(r + 0.5 * delta)? - h(r - 0.5 * delta)?) / delta;
    let dh = (4.0 * d2 - d1) / 3.0;
    let slope = SQRT_2 * dh;
    Ok(WarpFunction.g(r) * slope / (1.0 + slope * slope).sqrt())
}

/// Samples `û = √2·h` and `û′` at the given nodes.
pub fn catenoid_profile(params: &CatenoidParams, nodes: &[f64], tol: f64) -> Result<RadialProfile> {
    let values =
        nodes.iter().map(|&t| catenoid_height(params, t, tol).map(|h| SQRT_2 * h)).collect::<Result<Vec<_>>>()?;
    let derivs = nodes.iter().map(|&t| params.slope(t)).collect();
    RadialProfile::new(nodes.to_vec(), values, derivs)
}
