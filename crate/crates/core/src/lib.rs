//! Numerical geometry of the Heisenberg group Nil₃ with the balanced metric
//! and minimal-graph solvers on its totally geodesic plane.

pub mod connection;
pub mod error;
pub mod group;
pub mod io;
pub mod metric;
pub mod mse;
pub mod quadrature;
pub mod radial;
pub mod surface;
pub mod verify;

pub use connection::{
    christoffel_closed_form, christoffel_from_metric, geodesic_ode_rhs, integrate_geodesic, ChristoffelAtPoint,
};
pub use error::{NilError, Result};
pub use group::{inverse, multiply, ChartPoint, GroupElement, TangentVector};
pub use io::{export_csv, export_mesh, read_csv, MeshFile, MeshFormat};
pub use metric::{balanced_metric_from_translations, metric_closed_form, metric_from_translations, MetricAtPoint};
pub use surface::{
    circle_action, curvature_closed_forms, distance_to_identity, gaussian_curvature_riemann, geodesic_closed_form,
    second_fundamental_form_t, splitting_isometry, warp, BoundaryData, CenterElement, PolarCoord, SurfacePoint,
    WarpFunction,
};
