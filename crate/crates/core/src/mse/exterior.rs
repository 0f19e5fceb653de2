use serde::Serialize;

use super::config::SolverConfig;
use super::field::ScalarField;
use super::grid::AnnulusGrid;
use super::solve::{boundary_gradient_sup, newton_solve};
use crate::error::{NilError, Result};
use crate::radial::{barrier_f, BarrierParams};

/// One domain `Ω_m` of the exhaustion.
#[derive(Debug, Clone, Serialize)]
pub struct ExhaustionStep {
    pub m: f64,
    /// Outer value whose solution has boundary gradient `s`.
    pub t: f64,
    /// Barrier value `f(m − r0)`, an upper bound for `t`.
    pub barrier_cap: f64,
    /// Boundary gradient of the returned solution.
    pub gradient: f64,
    /// Dirichlet solves attempted while searching for `t`.
    pub trials: usize,
    /// Trials on which Newton did not converge; these are counted as lying above the target.
    pub failed_trials: usize,
}

/// Exterior solution for boundary gradient `s` outside the geodesic disk of
/// radius `r0`, built from Dirichlet problems on the annuli `r0 < r < m`.
#[derive(Debug, Clone, Serialize)]
pub struct ExteriorSolution {
    pub s: f64,
    pub r0: f64,
    pub steps: Vec<ExhaustionStep>,
    /// `sup |u_{m_k} − u_{m_{k−1}}|` over `r0 ≤ r ≤ compact_radius`, one entry per consecutive pair.
    pub cauchy: Vec<f64>,
    #[serde(skip)]
    pub grids: Vec<AnnulusGrid>,
    #[serde(skip)]
    pub fields: Vec<ScalarField>,
}

impl ExteriorSolution {
    pub fn t_trace(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.t).collect()
    }

    /// Grid and field of the largest domain.
    pub fn u_s(&self) -> (&AnnulusGrid, &ScalarField) {
        (self.grids.last().expect("nonempty schedule"), self.fields.last().expect("nonempty schedule"))
    }

    pub fn achieved_gradient(&self) -> f64 {
        self.steps.last().map_or(0.0, |s| s.gradient)
    }
}

#[derive(Clone)]
struct Trial {
    t: f64,
    grad: f64,
    field: ScalarField,
}

fn with_rims(mut u: ScalarField, t: f64) -> ScalarField {
    let last = u.n_r() - 1;
    for j in 0..u.n_theta() {
        u.set(0, j, 0.0);
        u.set(last, j, t);
    }
    u
}

fn scaled(u: &ScalarField, k: f64) -> ScalarField {
    let mut out = u.clone();
    for i in 0..u.n_r() {
        for j in 0..u.n_theta() {
            out.set(i, j, k * u.get(i, j));
        }
    }
    out
}

fn blend(a: &Trial, b: &Trial, t: f64) -> ScalarField {
    let w = (t - a.t) / (b.t - a.t);
    let mut out = a.field.clone();
    for i in 0..out.n_r() {
        for j in 0..out.n_theta() {
            out.set(i, j, (1.0 - w) * a.field.get(i, j) + w * b.field.get(i, j));
        }
    }
    out
}

/// Guess shape with rim value 1: the previous solution carried over and
/// continued outward along the barrier, or the barrier itself.
fn guess_shape(
    grid: &AnnulusGrid,
    barrier: &BarrierParams,
    previous: Option<(&AnnulusGrid, &ScalarField)>,
) -> Result<ScalarField> {
    let r0 = grid.r_min();
    let f_at = |r: f64| barrier_f(barrier, r - r0, 1e-12).map(|v| v.0);
    let mut u = ScalarField::zeros(grid);
    match previous {
        Some((pg, pf)) if pf.max() > 0.0 => {
            let mp = pg.r_max();
            let n = pg.n_r();
            let f_mp = f_at(mp)?;
            let df_mp = barrier.derivative(mp - r0);
            for j in 0..grid.n_theta() {
                let rim = pf.get(n - 1, j);
                let slope = (pf.get(n - 1, j) - pf.get(n - 2, j)) / (pg.r(n - 1) - pg.r(n - 2));
                for i in 0..grid.n_r() {
                    let r = grid.r(i);
                    let v = if r <= mp { pf.sample_ray(pg, r, j) } else { rim + (f_at(r)? - f_mp) * slope / df_mp };
                    u.set(i, j, v);
                }
            }
        }
        _ => {
            for i in 0..grid.n_r() {
                let v = f_at(grid.r(i))?;
                for j in 0..grid.n_theta() {
                    u.set(i, j, v);
                }
            }
        }
    }
    let rim = u.row(grid.n_r() - 1).iter().sum::<f64>() / grid.n_theta() as f64;
    Ok(scaled(&u, 1.0 / rim))
}

/// Dirichlet solve with outer value `t`; on failure retries by continuation
/// from the converged field `from`. `None` if neither converges.
fn solve_at(
    grid: &AnnulusGrid,
    t: f64,
    guess: ScalarField,
    from: &Trial,
    shape: &ScalarField,
    cfg: &SolverConfig,
) -> Option<Trial> {
    let attempt = |guess: ScalarField| newton_solve(grid, with_rims(guess, t), cfg).ok().map(|(u, _)| u);
    let field = attempt(guess).or_else(|| {
        log::debug!("outer value {t}: retrying by continuation from {}", from.t);
        let mut last = from.clone();
        for k in 1..=4 {
            let tk = from.t + (t - from.t) * k as f64 / 4.0;
            let g = if last.t > 0.0 { scaled(&last.field, tk / last.t) } else { scaled(shape, tk) };
            let (u, _) = newton_solve(grid, with_rims(g, tk), cfg).ok()?;
            last = Trial { t: tk, grad: 0.0, field: u };
        }
        Some(last.field)
    })?;
    let grad = boundary_gradient_sup(&field, grid);
    Some(Trial { t, grad, field })
}

/// Finds the outer value `t` on `Ω_m` whose solution has boundary gradient
/// `s`. Regula falsi with the Illinois modification once the target is
/// bracketed by two solved fields; plain bisection against the barrier bound
/// or against outer values where Newton failed.
fn search_outer_value(
    grid: &AnnulusGrid,
    s: f64,
    cap: f64,
    shape: &ScalarField,
    start: Option<f64>,
    cfg: &SolverConfig,
) -> Result<(Trial, usize, usize)> {
    let mut lo = Trial { t: 0.0, grad: 0.0, field: ScalarField::zeros(grid) };
    let mut lo_prev: Option<Trial> = None;
    let mut hi: Option<Trial> = None;
    let mut hi_t = cap;
    let mut best = lo.clone();
    let (mut trials, mut failed) = (0, 0);
    let mut side = 0i32;
    let (mut f_lo_w, mut f_hi_w) = (1.0, 1.0);
    while trials < 80 {
        let t = if let Some(h) = &hi {
            let (fl, fh) = (f_lo_w * (lo.grad - s), f_hi_w * (h.grad - s));
            let x = (lo.t * fh - h.t * fl) / (fh - fl);
            if x > lo.t && x < h.t {
                x
            } else {
                0.5 * (lo.t + h.t)
            }
        } else if let Some(lp) = &lo_prev {
            let x = lo.t + (s - lo.grad) * (lo.t - lp.t) / (lo.grad - lp.grad);
            if x.is_finite() && x > lo.t {
                x.min(0.5 * (lo.t + hi_t))
            } else {
                0.5 * (lo.t + hi_t)
            }
        } else if lo.t == 0.0 {
            start.filter(|&x| x > 0.0 && x < hi_t).unwrap_or(hi_t / 8.0)
        } else {
            0.5 * (lo.t + hi_t)
        };
        let guess = match &hi {
            Some(h) => blend(&lo, h, t),
            None if lo.t > 0.0 => scaled(&lo.field, t / lo.t),
            None => scaled(shape, t),
        };
        trials += 1;
        match solve_at(grid, t, guess, &lo, shape, cfg) {
            None => {
                failed += 1;
                log::debug!("outer value {t:.12}: no convergence, treated as above target");
                hi = None;
                hi_t = t;
                side = 0;
                f_lo_w = 1.0;
            }
            Some(trial) => {
                log::debug!("outer value {t:.12}: boundary gradient {:.12}", trial.grad);
                if (trial.grad - s).abs() < (best.grad - s).abs() {
                    best = trial.clone();
                }
                if trial.grad < s {
                    lo_prev = Some(std::mem::replace(&mut lo, trial));
                    if side == -1 {
                        f_hi_w *= 0.5;
                    }
                    side = -1;
                    f_lo_w = 1.0;
                } else {
                    hi_t = trial.t;
                    hi = Some(trial);
                    if side == 1 {
                        f_lo_w *= 0.5;
                    }
                    side = 1;
                    f_hi_w = 1.0;
                }
            }
        }
        if (best.grad - s).abs() <= cfg.gradient_tol || hi_t - lo.t <= cfg.bisection_tol {
            break;
        }
    }
    if best.t == 0.0 && s > 0.0 {
        return Err(NilError::BracketFailure(format!(
            "no outer value in (0, {cap}] reached boundary gradient {s} on r < {}",
            grid.r_max()
        )));
    }
    Ok((best, trials, failed))
}

/// Sup of `|a − b|` over `r0 ≤ r ≤ r_max` sampled along every ray.
fn sup_difference(ga: &AnnulusGrid, a: &ScalarField, gb: &AnnulusGrid, b: &ScalarField, r_max: f64) -> f64 {
    let r0 = ga.r_min().max(gb.r_min());
    let top = r_max.min(ga.r_max()).min(gb.r_max());
    let n = 64;
    let mut worst: f64 = 0.0;
    for k in 0..=n {
        let r = r0 + (top - r0) * k as f64 / n as f64;
        for j in 0..ga.n_theta().min(gb.n_theta()) {
            worst = worst.max((a.sample_ray(ga, r, j) - b.sample_ray(gb, r, j)).abs());
        }
    }
    worst
}

/// Exterior Dirichlet problem with zero data on the circle `r = r0` and
/// boundary gradient `s`: for each `m` of the schedule, the annulus
/// `r0 < r < m` is solved with the outer value `t_m` at which the gradient on
/// the inner circle equals `s`.
pub fn exterior_solve(s: f64, r0: f64, cfg: &SolverConfig) -> Result<ExteriorSolution> {
    cfg.validate()?;
    if !(s >= 0.0 && s.is_finite()) || !(r0 > 0.0) {
        return Err(NilError::InvalidParameter(format!("need s >= 0 and r0 > 0 (s = {s}, r0 = {r0})")));
    }
    if cfg.schedule[0] <= r0 {
        return Err(NilError::InvalidParameter(format!("schedule must start above r0 = {r0}")));
    }
    let barrier = BarrierParams::normalized(s, r0)?;
    let mut out = ExteriorSolution { s, r0, steps: vec![], cauchy: vec![], grids: vec![], fields: vec![] };
    for &m in &cfg.schedule {
        let grid = AnnulusGrid::graded(r0, m, cfg.n_radial, cfg.n_angular, cfg.grading)?;
        let cap = barrier_f(&barrier, m - r0, 1e-12)?.0;
        let step = if s == 0.0 {
            out.fields.push(ScalarField::zeros(&grid));
            ExhaustionStep { m, t: 0.0, barrier_cap: cap, gradient: 0.0, trials: 0, failed_trials: 0 }
        } else {
            let previous = out.grids.last().zip(out.fields.last());
            let shape = guess_shape(&grid, &barrier, previous)?;
            let start = out.steps.last().map(|st: &ExhaustionStep| st.t);
            let (best, trials, failed) = search_outer_value(&grid, s, cap, &shape, start, cfg)?;
            log::info!("s = {s}, m = {m}: t = {:.10}, gradient {:.10}, {trials} trials", best.t, best.grad);
            out.fields.push(best.field);
            ExhaustionStep { m, t: best.t, barrier_cap: cap, gradient: best.grad, trials, failed_trials: failed }
        };
        out.steps.push(step);
        out.grids.push(grid);
        let k = out.grids.len();
        if k >= 2 {
            let d = sup_difference(
                &out.grids[k - 2],
                &out.fields[k - 2],
                &out.grids[k - 1],
                &out.fields[k - 1],
                cfg.compact_radius,
            );
            out.cauchy.push(d);
        }
    }
    Ok(out)
}

/// Ordering of two exterior solutions `s_low < s_high`.
#[derive(Debug, Clone, Serialize)]
pub struct FoliationPair {
    pub s_low: f64,
    pub s_high: f64,
    /// `u_{s_low} < u_{s_high}` at every interior node of every domain.
    pub strictly_ordered: bool,
    pub min_interior_gap: f64,
    /// `(m, t_m(s_high) − t_m(s_low))`.
    pub rim_separation: Vec<(f64, f64)>,
    pub min_rim_separation: f64,
    pub rim_separation_nonincreasing: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FoliationReport {
    pub pairs: Vec<FoliationPair>,
}

impl FoliationReport {
    pub fn all_ordered(&self) -> bool {
        self.pairs.iter().all(|p| p.strictly_ordered)
    }

    pub fn all_separated(&self) -> bool {
        self.pairs.iter().all(|p| p.min_rim_separation > 0.0)
    }
}

/// Checks strict ordering of consecutive solutions (sorted by `s`) on their
/// common grids and reports the separation of their outer values.
pub fn foliation_check(sols: &[ExteriorSolution]) -> Result<FoliationReport> {
    let mut sorted: Vec<&ExteriorSolution> = sols.iter().collect();
    sorted.sort_by(|a, b| a.s.total_cmp(&b.s));
    let mut pairs = Vec::new();
    for w in sorted.windows(2) {
        let (a, b) = (w[0], w[1]);
        if !(b.s > a.s) {
            return Err(NilError::InvalidParameter(format!("repeated boundary gradient {}", a.s)));
        }
        if a.grids != b.grids {
            return Err(NilError::InvalidParameter("solutions were computed on different grids".into()));
        }
        let mut gap = f64::INFINITY;
        for (grid, (ua, ub)) in a.grids.iter().zip(a.fields.iter().zip(&b.fields)) {
            for i in 1..grid.n_r() - 1 {
                for j in 0..grid.n_theta() {
                    gap = gap.min(ub.get(i, j) - ua.get(i, j));
                }
            }
        }
        let rim_separation: Vec<(f64, f64)> = a.steps.iter().zip(&b.steps).map(|(x, y)| (x.m, y.t - x.t)).collect();
        let min_rim_separation = rim_separation.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
        let rim_separation_nonincreasing = rim_separation.windows(2).all(|v| v[1].1 <= v[0].1);
        pairs.push(FoliationPair {
            s_low: a.s,
            s_high: b.s,
            strictly_ordered: gap > 0.0,
            min_interior_gap: gap,
            rim_separation,
            min_rim_separation,
            rim_separation_nonincreasing,
        });
    }
    Ok(FoliationReport { pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::RadialMseSolution;

    fn cfg() -> SolverConfig {
        SolverConfig { n_radial: 48, n_angular: 16, schedule: vec![3.0, 5.0], grading: 2.0, ..SolverConfig::default() }
    }

    #[test]
    fn zero_gradient_gives_zero_solution() {
        let sol = exterior_solve(0.0, 1.0, &cfg()).unwrap();
        assert_eq!(sol.t_trace(), vec![0.0, 0.0]);
        assert_eq!(sol.u_s().1.max_abs(), 0.0);
    }

    #[test]
    fn matches_radial_solution_with_same_slope() {
        let c = cfg();
        let sol = exterior_solve(0.5, 1.0, &c).unwrap();
        assert!((sol.achieved_gradient() - 0.5).abs() <= 1e-6);
        for step in &sol.steps {
            assert!(step.t <= step.barrier_cap);
            let exact = RadialMseSolution::from_boundary_slope(1.0, step.m, 0.0, 0.5).value(step.m, 1e-12).unwrap();
            assert!((step.t - exact).abs() < 5e-3, "{} vs {exact}", step.t);
        }
        let (grid, u) = sol.u_s();
        for i in 0..grid.n_r() {
            assert!(u.row_spread(i) < 1e-8);
        }
    }

    #[test]
    fn foliation_of_two_gradients() {
        let c = cfg();
        let sols = [exterior_solve(0.5, 1.0, &c).unwrap(), exterior_solve(0.0, 1.0, &c).unwrap()];
        let report = foliation_check(&sols).unwrap();
        assert_eq!(report.pairs.len(), 1);
        assert!(report.all_ordered() && report.all_separated());
        assert_eq!(report.pairs[0].s_low, 0.0);
    }
}
