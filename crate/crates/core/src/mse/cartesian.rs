use std::f64::consts::SQRT_2;

/// Plane chart coordinates of the point at geodesic radius `r` and polar angle `theta`.
pub fn polar_to_cartesian(r: f64, theta: f64) -> (f64, f64) {
    let rho = r / SQRT_2;
    (rho * theta.cos(), rho * theta.sin())
}

/// `√D · g^{ab} u_b / W` in the chart `(x, y)` of the plane, where
/// `E = 2 + y²/2`, `F = −xy/2`, `G = 2 + x²/2` and `D = EG − F² = 4 + x² + y²`.
fn flux_density(x: f64, y: f64, ux: f64, uy: f64) -> (f64, f64) {
    let e = 2.0 + 0.5 * y * y;
    let f = -0.5 * x * y;
    let g = 2.0 + 0.5 * x * x;
    let d = e * g - f * f;
    let (vx, vy) = ((g * ux - f * uy) / d, (-f * ux + e * uy) / d);
    let w = (1.0 + ux * vx + uy * vy).sqrt();
    let sd = d.sqrt();
    (sd * vx / w, sd * vy / w)
}

/// Minimal-surface operator of a height function `u(x, y)` on the plane,
/// evaluated pointwise with central differences of step `h` in the chart
/// with the full `E, F, G` coefficients.
pub fn mse_operator_cartesian(u: impl Fn(f64, f64) -> f64, x: f64, y: f64, h: f64) -> f64 {
    let grad = |px: f64, py: f64| {
        let ux = (u(px + h, py) - u(px - h, py)) / (2.0 * h);
        let uy = (u(px, py + h) - u(px, py - h)) / (2.0 * h);
        flux_density(px, py, ux, uy)
    };
    let (xp, _) = grad(x + h, y);
    let (xm, _) = grad(x - h, y);
    let (_, yp) = grad(x, y + h);
    let (_, ym) = grad(x, y - h);
    let div = (xp - xm) / (2.0 * h) + (yp - ym) / (2.0 * h);
    div / (4.0 + x * x + y * y).sqrt()
}
