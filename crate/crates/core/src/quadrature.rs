//! Globally adaptive Gauss–Kronrod (10/21) quadrature.

use crate::error::{NilError, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut gauss = 0.0;
    let mut kronrod = fc * WGK[10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let diff = ((kronrod - gauss) * half).abs();
    // Standard QUADPACK-style scaling of the raw Kronrod–Gauss difference.
    let error = if diff > 0.0 { diff.min(200.0 * diff * (200.0 * diff).sqrt()) } else { 0.0 };
    Panel { a, b, value, error }
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`, bisecting the
/// panel with the largest error estimate until the total estimate meets the
/// tolerance or `max_panels` is reached.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, max_panels: usize) -> Result<QuadResult> {
    integrate_with_breaks(f, &[a, b], tol, max_panels)
}

/// As [`integrate`], starting from the panels delimited by `breaks`.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    breaks: &[f64],
    tol: f64,
    max_panels: usize,
) -> Result<QuadResult> {
    if !(tol > 0.0) {
        return Err(NilError::InvalidParameter(format!("quadrature tolerance must be positive, got {tol}")));
    }
    if breaks.len() < 2 {
        return Err(NilError::InvalidParameter("need at least two break points".into()));
    }
    if breaks.windows(2).all(|w| w[0] == w[1]) {
        return Ok(QuadResult { value: 0.0, error: 0.0, intervals: 0 });
    }
    let mut panels: Vec<Panel> = breaks.windows(2).map(|w| kronrod21(&f, w[0], w[1])).collect();
    loop {
        let total_err: f64 = panels.iter().map(|p| p.error).sum();
        let magnitude: f64 = panels.iter().map(|p| p.value.abs()).sum();
        if total_err <= tol.max(50.0 * f64::EPSILON * magnitude) {
            break;
        }
        if panels.len() >= max_panels {
            return Err(NilError::QuadratureNotConverged { tol, estimate: total_err });
        }
        let (worst, _) = panels.iter().enumerate().max_by(|x, y| x.1.error.total_cmp(&y.1.error)).expect("nonempty");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a.min(p.b) || mid >= p.a.max(p.b) {
            // Panel cannot be split further in floating point.
            return Err(NilError::QuadratureNotConverged { tol, estimate: total_err });
        }
        panels.push(kronrod21(&f, p.a, mid));
        panels.push(kronrod21(&f, mid, p.b));
    }
    // Sum in position order for reproducibility.
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    Ok(QuadResult {
        value: panels.iter().map(|p| p.value).sum(),
        error: panels.iter().map(|p| p.error).sum(),
        intervals: panels.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| x.powi(7) - 3.0 * x * x, 0.0, 2.0, 1e-13, 10).unwrap();
        assert_abs_diff_eq!(r.value, 32.0 - 8.0, epsilon = 1e-12);
        assert_eq!(r.intervals, 1);
    }

    #[test]
    fn smooth_transcendental() {
        let r = integrate(|x: f64| x.exp() * x.sin(), 0.0, 5.0, 1e-12, 200).unwrap();
        let exact = 0.5 * (5f64.exp() * (5f64.sin() - 5f64.cos()) + 1.0);
        assert_abs_diff_eq!(r.value, exact, epsilon = 1e-11);
    }

    #[test]
    fn endpoint_singularity_converges_adaptively() {
        let r = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, 1e-9, 500).unwrap();
        assert_abs_diff_eq!(r.value, 2.0, epsilon = 1e-8);
    }

    #[test]
    fn reversed_interval_negates() {
        let a = integrate(|x: f64| x.cos(), 0.0, 1.0, 1e-13, 50).unwrap().value;
        let b = integrate(|x: f64| x.cos(), 1.0, 0.0, 1e-13, 50).unwrap().value;
        assert_abs_diff_eq!(a, -b, epsilon = 1e-15);
    }

    #[test]
    fn empty_interval() {
        assert_eq!(integrate(|x| x, 3.0, 3.0, 1e-10, 10).unwrap().value, 0.0);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let err = integrate(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, 1e-14, 4).unwrap_err();
        assert!(matches!(err, NilError::QuadratureNotConverged { .. }));
    }
}
