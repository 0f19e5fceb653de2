//! Rotationally symmetric reductions on the plane: catenoid profiles, the
//! exterior barrier and the flux-constant radial minimal graphs.
//!
//! Heights are stored in fiber arc-length units `û = √2·ζ` unless a function
//! says otherwise.

mod barrier;
mod catenoid;
mod flux;
mod profile;

pub use barrier::{barrier_f, subsolution_check, BarrierParams, SubsolutionReport};
pub use catenoid::{catenoid_flux_check, catenoid_height, catenoid_profile, t0_min, CatenoidParams};
pub use flux::{radial_mse_solve, RadialMseSolution};
pub use profile::RadialProfile;

/// Quadrature panel budget shared by the radial routines.
pub(crate) const MAX_PANELS: usize = 4000;
