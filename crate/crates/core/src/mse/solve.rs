use serde::Serialize;

use super::banded::BandedMatrix;
use super::config::SolverConfig;
use super::field::ScalarField;
use super::grid::AnnulusGrid;
use super::operator::{assemble, Layout, Stencil};
use crate::error::{NilError, Result};
use crate::surface::BoundaryData;

/// Outcome of one Newton solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolveStats {
    pub steps: usize,
    /// Sup-norm of the intrinsic residual at the returned field.
    pub residual: f64,
}

fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, x| a.max(x.abs()))
}

fn norm_2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn apply_step(layout: &Layout, u: &ScalarField, delta: &[f64], lambda: f64) -> ScalarField {
    let mut out = u.clone();
    for i in 0..u.n_r() {
        for j in 0..u.n_theta() {
            if let Some(k) = layout.index(i, j) {
                out.set(i, j, u.get(i, j) + lambda * delta[k]);
            }
        }
    }
    out
}

/// Damped Newton iteration for the discrete minimal-surface equation.
/// The boundary rows of `guess` are the Dirichlet data and are never changed;
/// on a disk the origin row is treated as a single unknown.
pub fn newton_solve(grid: &AnnulusGrid, guess: ScalarField, cfg: &SolverConfig) -> Result<(ScalarField, SolveStats)> {
    if !guess.matches(grid) {
        return Err(NilError::InvalidParameter("initial field does not match grid".into()));
    }
    if !guess.is_finite() {
        return Err(NilError::InvalidParameter("initial field is not finite".into()));
    }
    let layout = Layout::new(grid);
    let st = Stencil::new(grid);
    let bw = layout.bandwidth();
    let mut u = guess;
    if grid.has_origin() {
        let c = u.get(0, 0);
        for j in 1..grid.n_theta() {
            u.set(0, j, c);
        }
    }
    let mut jac = BandedMatrix::zeros(layout.len(), bw, bw);
    let mut res = assemble(&st, &layout, &u, Some(&mut jac));
    let mut r_inf = norm_inf(&res);
    for step in 0..cfg.max_newton {
        log::debug!("newton step {step}: residual {r_inf:.3e}");
        if r_inf <= cfg.newton_tol {
            return Ok((u, SolveStats { steps: step, residual: r_inf }));
        }
        let lu = std::mem::replace(&mut jac, BandedMatrix::zeros(0, 0, 0)).factor()?;
        let mut delta: Vec<f64> = res.iter().map(|v| -v).collect();
        lu.solve(&mut delta);
        if !delta.iter().all(|v| v.is_finite()) {
            return Err(NilError::NewtonDiverged { iterations: step + 1, residual: r_inf });
        }
        let r_2 = norm_2(&res);
        let mut lambda = cfg.damping;
        loop {
            let trial = apply_step(&layout, &u, &delta, lambda);
            let trial_res = assemble(&st, &layout, &trial, None);
            let t_inf = norm_inf(&trial_res);
            let t_2 = norm_2(&trial_res);
            if t_inf.is_finite() && (t_2 <= (1.0 - 1e-4 * lambda) * r_2 || t_inf <= cfg.newton_tol) {
                log::debug!("newton step {step}: damping {lambda}, new residual {t_inf:.3e}");
                u = trial;
                break;
            }
            lambda *= 0.5;
            if lambda < 1e-6 {
                return Err(NilError::NewtonDiverged { iterations: step + 1, residual: r_inf });
            }
        }
        jac = BandedMatrix::zeros(layout.len(), bw, bw);
        res = assemble(&st, &layout, &u, Some(&mut jac));
        r_inf = norm_inf(&res);
    }
    if r_inf <= cfg.newton_tol {
        Ok((u, SolveStats { steps: cfg.max_newton, residual: r_inf }))
    } else {
        Err(NilError::NewtonDiverged { iterations: cfg.max_newton, residual: r_inf })
    }
}

/// Field with the given Dirichlet rows and a linear-in-`r` interior.
/// On a disk the inner data is ignored and the origin starts at the mean of
/// the outer data.
pub fn initial_guess(grid: &AnnulusGrid, inner: &BoundaryData, outer: &BoundaryData) -> ScalarField {
    let (r0, r1) = (grid.r_min(), grid.r_max());
    let m = grid.n_theta();
    let outer_vals: Vec<f64> = (0..m).map(|j| outer.eval(grid.theta(j))).collect();
    let inner_vals: Vec<f64> = if grid.has_origin() {
        let mean = outer_vals.iter().sum::<f64>() / m as f64;
        vec![mean; m]
    } else {
        (0..m).map(|j| inner.eval(grid.theta(j))).collect()
    };
    let mut u = ScalarField::zeros(grid);
    for i in 0..grid.n_r() {
        let w = (grid.r(i) - r0) / (r1 - r0);
        for j in 0..m {
            u.set(i, j, (1.0 - w) * inner_vals[j] + w * outer_vals[j]);
        }
    }
    u
}

/// Solves `M[u] = 0` on `grid` with `u = inner` on the inner circle and
/// `u = outer` on the outer circle. Disks take only the outer data.
pub fn dirichlet_solve_with_stats(
    grid: &AnnulusGrid,
    inner: &BoundaryData,
    outer: &BoundaryData,
    cfg: &SolverConfig,
) -> Result<(ScalarField, SolveStats)> {
    newton_solve(grid, initial_guess(grid, inner, outer), cfg)
}

pub fn dirichlet_solve(
    grid: &AnnulusGrid,
    inner: &BoundaryData,
    outer: &BoundaryData,
    cfg: &SolverConfig,
) -> Result<ScalarField> {
    Ok(dirichlet_solve_with_stats(grid, inner, outer, cfg)?.0)
}

/// Sup over the inner circle of `√(u_r² + u_θ²/g²)`, with the second-order
/// one-sided difference for `u_r`.
pub fn boundary_gradient_sup(u: &ScalarField, grid: &AnnulusGrid) -> f64 {
    let (r0, r1, r2) = (grid.r(0), grid.r(1), grid.r(2));
    let (h1, h2) = (r1 - r0, r2 - r0);
    let a0 = -(h1 + h2) / (h1 * h2);
    let a1 = h2 / (h1 * (h2 - h1));
    let a2 = -h1 / (h2 * (h2 - h1));
    let g0 = grid.warp(0);
    let m = grid.n_theta();
    let dt = grid.d_theta();
    (0..m)
        .map(|j| {
            let ur = a0 * u.get(0, j) + a1 * u.get(1, j) + a2 * u.get(2, j);
            let ut = if g0 > 0.0 { (u.get(0, (j + 1) % m) - u.get(0, (j + m - 1) % m)) / (2.0 * dt * g0) } else { 0.0 };
            (ur * ur + ut * ut).sqrt()
        })
        .fold(0.0, f64::max)
}
