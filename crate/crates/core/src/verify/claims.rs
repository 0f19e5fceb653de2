use std::fmt::Write as _;

use serde::Serialize;

use super::checks::*;
use super::surface_sample::{catenoid_surface, catenoid_tau, mean_curvature_residual, HeightReading};
use crate::error::Result;
use crate::radial::{catenoid_flux_check, t0_min, CatenoidParams};
use crate::surface::{curvature_closed_forms, SurfacePoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The statement disagrees with a value on which two independent
    /// computations from the same data agree.
    Discrepancy,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Discrepancy => "discrepancy",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Measurement {
    pub name: String,
    pub value: f64,
    /// Bound the value must respect for the claim to pass, if any.
    pub bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimReport {
    pub id: String,
    pub locus: String,
    pub verdict: Verdict,
    pub values: Vec<Measurement>,
    pub tolerance: f64,
}

impl ClaimReport {
    fn from_checks(id: &str, locus: &str, tolerance: f64, values: Vec<Measurement>) -> Self {
        let ok = values.iter().all(|m| m.bound.map_or(true, |b| m.value.abs() <= b));
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        Self { id: id.into(), locus: locus.into(), verdict, values, tolerance }
    }
}

fn bounded(name: &str, value: f64, bound: f64) -> Measurement {
    Measurement { name: name.into(), value, bound: Some(bound) }
}

fn info(name: &str, value: f64) -> Measurement {
    Measurement { name: name.into(), value, bound: None }
}

/// Tolerances of the claim-by-claim report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReportTolerances {
    pub second_fundamental_form: f64,
    pub tangent_geodesic: f64,
    pub splitting: f64,
    pub isometry: f64,
    pub geodesic_residual: f64,
    pub distance_identity: f64,
    pub integration: f64,
    pub curvature_agreement: f64,
    pub neck: f64,
    pub flux: f64,
    pub mean_curvature: f64,
}

impl Default for ReportTolerances {
    fn default() -> Self {
        Self {
            second_fundamental_form: 1e-10,
            tangent_geodesic: 1e-8,
            splitting: 1e-10,
            isometry: 1e-8,
            geodesic_residual: 1e-10,
            distance_identity: 1e-12,
            integration: 1e-8,
            curvature_agreement: 1e-5,
            neck: 1e-10,
            flux: 1e-8,
            mean_curvature: 1e-5,
        }
    }
}

impl ReportTolerances {
    /// The same tolerance for every check.
    pub fn uniform(tol: f64) -> Self {
        Self {
            second_fundamental_form: tol,
            tangent_geodesic: tol,
            splitting: tol,
            isometry: tol,
            geodesic_residual: tol,
            distance_identity: tol,
            integration: tol,
            curvature_agreement: tol,
            neck: tol,
            flux: tol,
            mean_curvature: tol,
        }
    }
}

/// Radii at which the two curvature computations are compared.
pub const CURVATURE_RADII: [f64; 6] = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0];

/// Flux parameters for the neck identity.
pub const NECK_FLUXES: [f64; 5] = [0.1, 1.0, 3.0, 10.0, 100.0];

/// Curvature adjudication: both oracles, their agreement, and the printed constant.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureAdjudication {
    /// `(r, K_riemann, −g″/g, K_printed)`.
    pub rows: Vec<(f64, f64, f64, f64)>,
    pub oracle_gap: f64,
    pub orbit_warp_error: f64,
    /// Median of `K_printed / K_oracle`.
    pub printed_ratio: f64,
}

pub fn curvature_adjudication() -> Result<CurvatureAdjudication> {
    let mut rows = Vec::new();
    let mut gap: f64 = 0.0;
    let mut ratios = Vec::new();
    for &r in &CURVATURE_RADII {
        for k in 0..8 {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / 8.0;
            let (riemann, warp) = curvature_oracles(r, angle, 1e-4)?;
            gap = gap.max((riemann - warp).abs());
            if k == 0 {
                let p = SurfacePoint::new(r / 2f64.sqrt(), 0.0);
                let (printed, _) = curvature_closed_forms(&p);
                rows.push((r, riemann, warp, printed));
                ratios.push(printed / warp);
            }
        }
    }
    let (origin_riemann, origin_warp) = curvature_oracles(0.0, 0.0, 1e-4)?;
    gap = gap.max((origin_riemann - origin_warp).abs());
    let (origin_printed, _) = curvature_closed_forms(&SurfacePoint::IDENTITY);
    rows.insert(0, (0.0, origin_riemann, origin_warp, origin_printed));
    ratios.sort_by(f64::total_cmp);
    let printed_ratio = ratios[ratios.len() / 2];
    let orbit_warp_error = warp_orbit_error(&[1e-3, 0.5, 1.0, 2.0, 5.0], 256);
    Ok(CurvatureAdjudication { rows, oracle_gap: gap, orbit_warp_error, printed_ratio })
}

/// Catenoid checks: neck identity, flux constancy and 3-D mean curvature.
#[derive(Debug, Clone, Serialize)]
pub struct CatenoidEvidence {
    pub neck_error: f64,
    pub flux_spread: f64,
    pub flux_target_error: f64,
    pub max_mean_curvature: f64,
    pub matrix_reading_min_mean_curvature: f64,
}

pub fn catenoid_evidence(n_samples: usize) -> Result<CatenoidEvidence> {
    let mut neck_error: f64 = 0.0;
    for &c in &NECK_FLUXES {
        let t = t0_min(c)?;
        neck_error = neck_error.max((t * t * (t * t + 8.0) - c * c).abs());
    }
    let params = CatenoidParams::new(3.0, 1.0)?;
    let mut fluxes = Vec::new();
    for k in 0..40 {
        let r = params.t0 + 0.05 + (20.0 - params.t0 - 0.05) * k as f64 / 39.0;
        fluxes.push(catenoid_flux_check(&params, r)?);
    }
    let hi = fluxes.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = fluxes.iter().cloned().fold(f64::INFINITY, f64::min);
    let target = 3.0 / (2.0 * 2f64.sqrt());
    let flux_target_error = fluxes.iter().map(|f| (f - target).abs()).fold(0.0, f64::max);
    let chart = catenoid_surface(params, 10.0, HeightReading::ChartOffset, 8, 8);
    let matrix = catenoid_surface(params, 10.0, HeightReading::MatrixEntry, 8, 8);
    let (mut worst, mut matrix_min) = (0.0f64, f64::INFINITY);
    for k in 0..n_samples {
        let t = params.t0 + 0.1 + (10.0 - params.t0 - 0.1) * k as f64 / (n_samples - 1) as f64;
        let theta = 2.0 * std::f64::consts::PI * ((k as f64 * 0.618_033_988_749_894_9).fract());
        let tau = catenoid_tau(&params, t);
        worst = worst.max(mean_curvature_residual(&chart, tau, theta)?.abs());
        matrix_min = matrix_min.min(mean_curvature_residual(&matrix, tau, theta)?.abs());
    }
    Ok(CatenoidEvidence {
        neck_error,
        flux_spread: hi - lo,
        flux_target_error,
        max_mean_curvature: worst,
        matrix_reading_min_mean_curvature: matrix_min,
    })
}

/// One report entry per item of the structure theorem for the plane and one
/// for the catenoid family.
pub fn theorem1_report(tols: &ReportTolerances) -> Result<Vec<ClaimReport>> {
    let mut out = Vec::new();

    out.push(ClaimReport::from_checks(
        "thm1-a",
        "Theorem 1(a): the plane is totally geodesic",
        tols.second_fundamental_form,
        vec![
            bounded("max |II| at 100 points", plane_second_fundamental_form(100, 5.0), tols.second_fundamental_form),
            bounded(
                "max |zeta| on tangent geodesics, t <= 10",
                tangent_geodesic_drift(16, 10.0, 1000)?,
                tols.tangent_geodesic,
            ),
        ],
    ));

    let (split_err, trip_err) = splitting_defect(100, 5.0);
    out.push(ClaimReport::from_checks(
        "thm1-b",
        "Theorem 1(b): isometric splitting as plane x center",
        tols.splitting,
        vec![
            bounded("max pullback - product metric", split_err, tols.splitting),
            bounded("round trip", trip_err, tols.splitting),
        ],
    ));

    let act = circle_action_defects(100, 5.0, 1e-5);
    out.push(ClaimReport::from_checks(
        "thm1-c",
        "Theorem 1(c): isometric circle action fixing the center",
        tols.isometry,
        vec![
            bounded("isometry defect", act.isometry, tols.isometry),
            bounded("plane invariance defect", act.plane, 0.0),
            bounded("center displacement", act.center, 0.0),
            bounded("composition defect", act.composition, tols.isometry),
            info("plane defect, formula read in matrix coordinates", act.matrix_reading_plane),
            info("composition defect, formula read in matrix coordinates", act.matrix_reading_composition),
        ],
    ));

    let (geo_res, dist_err) = closed_form_geodesic_defects(16, 50, 10.0);
    out.push(ClaimReport::from_checks(
        "thm1-d",
        "Theorem 1(d): geodesics through the identity and r = sqrt2 |(x,y)|",
        tols.geodesic_residual,
        vec![
            bounded("closed-form geodesic residual", geo_res, tols.geodesic_residual),
            bounded("|r(gamma(t)) - |t||", dist_err, tols.distance_identity),
            bounded("integration vs closed form at t = 1", geodesic_integration_error(16, 1000)?, tols.integration),
        ],
    ));

    let curv = curvature_adjudication()?;
    let oracles_agree =
        curv.oracle_gap <= tols.curvature_agreement && curv.orbit_warp_error <= tols.curvature_agreement;
    let printed_matches = (curv.printed_ratio - 1.0).abs() <= tols.curvature_agreement;
    let verdict = match (oracles_agree, printed_matches) {
        (false, _) => Verdict::Fail,
        (true, true) => Verdict::Pass,
        (true, false) => Verdict::Discrepancy,
    };
    let origin = curv.rows[0];
    out.push(ClaimReport {
        id: "thm1-e".into(),
        locus: "Theorem 1(e): Gaussian curvature of the plane".into(),
        verdict,
        values: vec![
            bounded("oracle gap (Riemann vs -g''/g)", curv.oracle_gap, tols.curvature_agreement),
            bounded("orbit length vs warp", curv.orbit_warp_error, tols.curvature_agreement),
            info("K at origin, Riemann", origin.1),
            info("K at origin, -g''/g", origin.2),
            info("K at origin, printed", origin.3),
            info("printed / oracle", curv.printed_ratio),
        ],
        tolerance: tols.curvature_agreement,
    });

    let cat = catenoid_evidence(20)?;
    out.push(ClaimReport::from_checks(
        "prop-catenoid",
        "Proposition: catenoids and their neck condition",
        tols.mean_curvature,
        vec![
            bounded("neck identity error", cat.neck_error, tols.neck),
            bounded("flux spread", cat.flux_spread, tols.flux),
            bounded("flux - c/(2 sqrt2)", cat.flux_target_error, tols.flux),
            bounded("max |H| at 20 samples", cat.max_mean_curvature, tols.mean_curvature),
            info("min |H|, height read as matrix entry", cat.matrix_reading_min_mean_curvature),
        ],
    ));
    Ok(out)
}

/// Fixed-width table of the report.
pub fn render_table(reports: &[ClaimReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "{:<14} {:<12} tol {:<8.1e} {}", r.id, r.verdict.as_str(), r.tolerance, r.locus);
        for m in &r.values {
            match m.bound {
                Some(b) => {
                    let _ = writeln!(out, "    {:<52} {:>12.4e}  (<= {:.1e})", m.name, m.value, b);
                }
                None => {
                    let _ = writeln!(out, "    {:<52} {:>12.6}", m.name, m.value);
                }
            }
        }
    }
    out
}

pub fn report_json(reports: &[ClaimReport]) -> String {
    serde_json::to_string_pretty(reports).expect("report serializes")
}
