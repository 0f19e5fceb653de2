use std::f64::consts::{FRAC_PI_2, SQRT_2};

use serde::Serialize;

use super::MAX_PANELS;
use crate::error::{NilError, Result};
use crate::quadrature::integrate_with_breaks;
use crate::surface::WarpFunction;

/// Parameters of the radial subsolution
/// `f(r) = ∫₀^r c·exp(√2 α arctan((t+α)/2^{3/2})) / ((t+α)² + 8) dt`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BarrierParams {
    /// Boundary gradient `f′(0)`.
    pub s: f64,
    /// Enclosing-radius offset.
    pub alpha: f64,
    /// Scale constant `c`.
    pub c_barrier: f64,
}

impl BarrierParams {
    /// Chooses the scale so that `f′(0) = s`.
    pub fn normalized(s: f64, alpha: f64) -> Result<Self> {
        if !(s >= 0.0) || !(alpha > 0.0) {
            return Err(NilError::InvalidParameter(format!(
                "barrier needs s >= 0 and alpha > 0 (s = {s}, alpha = {alpha})"
            )));
        }
        let c_barrier = s * (alpha * alpha + 8.0) / (SQRT_2 * alpha * (SQRT_2 * alpha / 4.0).atan()).exp();
        Ok(Self { s, alpha, c_barrier })
    }

    fn growth(&self, r: f64) -> f64 {
        (SQRT_2 * self.alpha * ((r + self.alpha) / (2.0 * SQRT_2)).atan()).exp()
    }

    /// `f′(r)`, closed form.
    pub fn derivative(&self, r: f64) -> f64 {
        let q = (r + self.alpha).powi(2) + 8.0;
        self.c_barrier * self.growth(r) / q
    }

    /// `f″(r)`, by differentiating the closed form of `f′`.
    pub fn second_derivative(&self, r: f64) -> f64 {
        let q = (r + self.alpha).powi(2) + 8.0;
        // d/dr exp(√2α arctan((r+α)/2√2)) = exp(·)·4α/q
        self.c_barrier * self.growth(r) * (4.0 * self.alpha - 2.0 * (r + self.alpha)) / (q * q)
    }

    /// Residual of `f″ + f′·2(r−α)/((r+α)²+8) = 0`.
    pub fn ode_residual(&self, r: f64) -> f64 {
        let q = (r + self.alpha).powi(2) + 8.0;
        self.second_derivative(r) + self.derivative(r) * 2.0 * (r - self.alpha) / q
    }

    /// Closed upper bound `c·e^{√2απ/2}·∫₀^∞ dt/((t+α)²+8)`.
    pub fn sup_bound(&self) -> f64 {
        let tail = (FRAC_PI_2 - (self.alpha / (2.0 * SQRT_2)).atan()) / (2.0 * SQRT_2);
        self.c_barrier * (SQRT_2 * self.alpha * FRAC_PI_2).exp() * tail
    }

    /// Lower bound `2(r−α)/((r+α)²+8)` on the curvature of the level sets.
    pub fn curvature_bound(&self, r: f64) -> f64 {
        2.0 * (r - self.alpha) / ((r + self.alpha).powi(2) + 8.0)
    }
}

/// `(f(r), f′(r))`, with `f` by adaptive quadrature to absolute tolerance `tol`.
pub fn barrier_f(params: &BarrierParams, r: f64, tol: f64) -> Result<(f64, f64)> {
    if r < 0.0 {
        return Err(NilError::NegativeRadius(r));
    }
    if r == 0.0 || params.c_barrier == 0.0 {
        return Ok((0.0, params.derivative(r)));
    }
    // Geometric break points keep the slowly decaying tail cheap.
    let mut breaks = vec![0.0];
    let mut b = 1.0;
    while b < r {
        breaks.push(b);
        b *= 8.0;
    }
    breaks.push(r);
    let f = integrate_with_breaks(|t| params.derivative(t), &breaks, tol, MAX_PANELS)?.value;
    Ok((f, params.derivative(r)))
}

/// Outcome of evaluating the minimal-surface operator on `f(dist(·, ∂Ω))`
/// for a geodesic disk `Ω` of radius `r0` about the identity.
#[derive(Debug, Clone, Serialize)]
pub struct SubsolutionReport {
    /// `(ρ, M[f])` at each sampled distance `ρ` from `∂Ω`.
    pub operator_values: Vec<(f64, f64)>,
    pub min_operator: f64,
    /// `(ρ, g′/g(r0+ρ) − 2(ρ−α)/((ρ+α)²+8))`.
    pub bound_margins: Vec<(f64, f64)>,
    pub min_margin: f64,
}

/// Evaluates `M[f] = (f″ + f′(1+f′²)k)/(1+f′²)^{3/2}` with the exact level-set
/// curvature `k = g′(r0+ρ)/g(r0+ρ)` on the grid of distances `grid`.
pub fn subsolution_check(params: &BarrierParams, r0: f64, grid: &[f64]) -> Result<SubsolutionReport> {
    if (params.alpha - r0).abs() > 1e-12 * r0.max(1.0) {
        return Err(NilError::InvalidParameter(format!(
            "a disk of radius {r0} needs alpha = {r0}, got {}",
            params.alpha
        )));
    }
    let w = WarpFunction;
    let mut operator_values = Vec::with_capacity(grid.len());
    let mut bound_margins = Vec::with_capacity(grid.len());
    for &rho in grid {
        if rho < 0.0 {
            return Err(NilError::NegativeRadius(rho));
        }
        let k = w.circle_curvature(r0 + rho);
        let fp = params.derivative(rho);
        let fpp = params.second_derivative(rho);
        let q = 1.0 + fp * fp;
        operator_values.push((rho, (fpp + fp * q * k) / (q * q.sqrt())));
        bound_margins.push((rho, k - params.curvature_bound(rho)));
    }
    let min_operator = operator_values.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
    let min_margin = bound_margins.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
    Ok(SubsolutionReport { operator_values, min_operator, bound_margins, min_margin })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn starts_at_zero_with_slope_s() {
        let p = BarrierParams::normalized(1.0, 1.0).unwrap();
        assert_eq!(barrier_f(&p, 0.0, 1e-12).unwrap().0, 0.0);
        assert_abs_diff_eq!(p.derivative(0.0), 1.0, epsilon = 1e-12);
        let p = BarrierParams::normalized(0.37, 2.5).unwrap();
        assert_abs_diff_eq!(p.derivative(0.0), 0.37, epsilon = 1e-12);
    }

    #[test]
    fn ode_equality_residual() {
        let p = BarrierParams::normalized(1.0, 1.0).unwrap();
        for r in [0.0, 1.0, 5.0, 20.0] {
            assert!(p.ode_residual(r).abs() <= 1e-10);
        }
    }

    #[test]
    fn second_derivative_matches_differences() {
        let p = BarrierParams::normalized(1.0, 1.0).unwrap();
        let h = 1e-5;
        for r in [0.3, 2.0, 9.0] {
            let fd = (p.derivative(r + h) - p.derivative(r - h)) / (2.0 * h);
            assert_abs_diff_eq!(p.second_derivative(r), fd, epsilon = 1e-9);
        }
    }

    #[test]
    fn quadrature_matches_derivative() {
        let p = BarrierParams::normalized(1.0, 1.0).unwrap();
        let h = 1e-4;
        let (fa, _) = barrier_f(&p, 3.0 - h, 1e-13).unwrap();
        let (fb, dfb) = barrier_f(&p, 3.0 + h, 1e-13).unwrap();
        assert_abs_diff_eq!((fb - fa) / (2.0 * h), p.derivative(3.0), epsilon = 1e-7);
        assert!(dfb > 0.0);
    }

    #[test]
    fn bounded_and_increasing() {
        let p = BarrierParams::normalized(1.0, 1.0).unwrap();
        let mut prev = 0.0;
        for r in [0.5, 1.0, 10.0, 100.0, 1e4, 1e6] {
            let (f, fp) = barrier_f(&p, r, 1e-10).unwrap();
            assert!(f > prev && f <= p.sup_bound());
            assert!(fp > 0.0);
            prev = f;
        }
        assert!(p.derivative(1e6) < 1e-10);
    }

    #[test]
    fn zero_gradient_is_flat() {
        let p = BarrierParams::normalized(0.0, 1.0).unwrap();
        assert_eq!(barrier_f(&p, 7.0, 1e-12).unwrap(), (0.0, 0.0));
        let rep = subsolution_check(&p, 1.0, &[0.0, 1.0, 10.0]).unwrap();
        assert!(rep.operator_values.iter().all(|v| v.1 == 0.0));
    }

    #[test]
    fn subsolution_on_unit_disk() {
        let p = BarrierParams::normalized(1.0, 1.0).unwrap();
        let grid: Vec<f64> = (1..=300).map(|i| 0.1 * i as f64).collect();
        let rep = subsolution_check(&p, 1.0, &grid).unwrap();
        assert!(rep.min_operator >= -1e-10);
        let rep = subsolution_check(&p, 1.0, &[0.5, 1.0, 5.0, 20.0]).unwrap();
        assert!(rep.min_margin > 0.0);
        assert!(subsolution_check(&p, 2.0, &grid).is_err());
    }

    #[test]
    fn rejects_bad_params() {
        assert!(BarrierParams::normalized(-1.0, 1.0).is_err());
        assert!(BarrierParams::normalized(1.0, 0.0).is_err());
        let p = BarrierParams::normalized(1.0, 1.0).unwrap();
        assert!(barrier_f(&p, -1.0, 1e-10).is_err());
    }
}
