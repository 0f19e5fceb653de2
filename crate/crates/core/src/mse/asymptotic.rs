use serde::Serialize;

use super::config::SolverConfig;
use super::field::ScalarField;
use super::grid::AnnulusGrid;
use super::solve::{initial_guess, newton_solve, SolveStats};
use crate::error::Result;
use crate::surface::BoundaryData;

/// Solutions on the disks `r < R` for each `R` of the schedule, all with the
/// same angular data on the rim.
#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticSolution {
    pub label: String,
    pub radii: Vec<f64>,
    pub stats: Vec<SolveStats>,
    /// `sup |u_{R_k} − u_{R_{k−1}}|` on `r ≤ compact_radius`.
    pub consecutive_differences: Vec<f64>,
    #[serde(skip)]
    pub grids: Vec<AnnulusGrid>,
    #[serde(skip)]
    pub fields: Vec<ScalarField>,
}

impl AsymptoticSolution {
    /// Whether the consecutive differences strictly decrease along the schedule.
    pub fn differences_decreasing(&self) -> bool {
        self.consecutive_differences.windows(2).all(|w| w[1] < w[0])
    }
}

fn carried_over(grid: &AnnulusGrid, prev_grid: &AnnulusGrid, prev: &ScalarField, phi: &BoundaryData) -> ScalarField {
    let rp = prev_grid.r_max();
    let big_r = grid.r_max();
    let last = prev_grid.n_r() - 1;
    let mut u = ScalarField::zeros(grid);
    for j in 0..grid.n_theta() {
        let target = phi.eval(grid.theta(j));
        let rim = prev.get(last, j);
        for i in 0..grid.n_r() {
            let r = grid.r(i);
            let v =
                if r <= rp { prev.sample_ray(prev_grid, r, j) } else { rim + (target - rim) * (r - rp) / (big_r - rp) };
            u.set(i, j, v);
        }
    }
    for j in 0..grid.n_theta() {
        u.set(grid.n_r() - 1, j, phi.eval(grid.theta(j)));
    }
    u
}

fn sup_difference_on_disk(ga: &AnnulusGrid, a: &ScalarField, gb: &AnnulusGrid, b: &ScalarField, r_max: f64) -> f64 {
    let top = r_max.min(ga.r_max()).min(gb.r_max());
    let n = 64;
    let mut worst: f64 = 0.0;
    for k in 0..=n {
        let r = top * k as f64 / n as f64;
        for j in 0..ga.n_theta().min(gb.n_theta()) {
            worst = worst.max((a.sample_ray(ga, r, j) - b.sample_ray(gb, r, j)).abs());
        }
    }
    worst
}

/// Truncated asymptotic Dirichlet problem: solves `M[u] = 0` on the disks
/// `r < R`, `R` from `cfg.schedule`, with `u = φ(θ)` on `r = R`, and reports
/// how much consecutive solutions differ on `r ≤ cfg.compact_radius`.
pub fn asymptotic_solve(phi: &BoundaryData, cfg: &SolverConfig) -> Result<AsymptoticSolution> {
    cfg.validate()?;
    let mut out = AsymptoticSolution {
        label: phi.label().to_string(),
        radii: vec![],
        stats: vec![],
        consecutive_differences: vec![],
        grids: vec![],
        fields: vec![],
    };
    for &big_r in &cfg.schedule {
        let grid = AnnulusGrid::disk(big_r, cfg.n_radial, cfg.n_angular, cfg.disk_grading)?;
        let guess = match (out.grids.last(), out.fields.last()) {
            (Some(pg), Some(pf)) => carried_over(&grid, pg, pf, phi),
            _ => initial_guess(&grid, phi, phi),
        };
        let (u, stats) = newton_solve(&grid, guess, cfg)?;
        log::info!("disk radius {big_r}: {} Newton steps, residual {:.3e}", stats.steps, stats.residual);
        if let (Some(pg), Some(pf)) = (out.grids.last(), out.fields.last()) {
            out.consecutive_differences.push(sup_difference_on_disk(pg, pf, &grid, &u, cfg.compact_radius));
        }
        out.radii.push(big_r);
        out.stats.push(stats);
        out.grids.push(grid);
        out.fields.push(u);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SolverConfig {
        SolverConfig { n_radial: 40, n_angular: 16, schedule: vec![4.0, 8.0], ..SolverConfig::default() }
    }

    #[test]
    fn constant_data() {
        let sol = asymptotic_solve(&BoundaryData::constant(2.5), &cfg()).unwrap();
        for u in &sol.fields {
            assert!(u.values().iter().all(|v| (v - 2.5).abs() < 1e-10));
        }
        assert!(sol.consecutive_differences[0] < 1e-10);
    }

    #[test]
    fn cosine_data_bounded_and_odd() {
        let sol = asymptotic_solve(&BoundaryData::cosine(1.0, 1), &cfg()).unwrap();
        for (grid, u) in sol.grids.iter().zip(&sol.fields) {
            assert!(u.max() <= 1.0 + 1e-10 && u.min() >= -1.0 - 1e-10);
            let m = grid.n_theta();
            for i in 1..grid.n_r() {
                assert!((u.get(i, m / 4) + u.get(i, 3 * m / 4)).abs() < 1e-9);
                assert!((u.get(i, 0) + u.get(i, m / 2)).abs() < 1e-9);
            }
        }
    }
}
