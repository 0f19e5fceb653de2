//! Finite-volume discretization of the minimal surface equation on 𝕋 in
//! geodesic polar coordinates, with the exterior and asymptotic Dirichlet
//! drivers built on it.

mod asymptotic;
mod banded;
mod cartesian;
mod config;
mod exterior;
mod field;
mod grid;
mod operator;
mod solve;

pub use asymptotic::{asymptotic_solve, AsymptoticSolution};
pub use banded::{BandedLu, BandedMatrix};
pub use cartesian::{mse_operator_cartesian, polar_to_cartesian};
pub use config::{parse_list, SolverConfig};
pub use exterior::{exterior_solve, foliation_check, ExhaustionStep, ExteriorSolution, FoliationPair, FoliationReport};
pub use field::ScalarField;
pub use grid::AnnulusGrid;
pub use operator::mse_operator;
pub use solve::{
    boundary_gradient_sup, dirichlet_solve, dirichlet_solve_with_stats, initial_guess, newton_solve, SolveStats,
};
