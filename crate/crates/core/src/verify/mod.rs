//! Independent numerical oracles: mean curvature of parametrized surfaces
//! from the 3-D connection, and the claim-by-claim report for the plane.

mod checks;
mod claims;
mod spline;
mod surface_sample;

pub use checks::*;
pub use claims::{
    catenoid_evidence, curvature_adjudication, render_table, report_json, theorem1_report, CatenoidEvidence,
    ClaimReport, CurvatureAdjudication, Measurement, ReportTolerances, Verdict, CURVATURE_RADII, NECK_FLUXES,
};
pub use spline::{NaturalSpline, PeriodicSpline};
pub use surface_sample::{
    catenoid_surface, catenoid_tau, cylinder_surface, graph_embed, mean_curvature_residual, plane_surface,
    HeightReading, SurfaceSample,
};
