//! Traveling-wave solver for 1D reaction-diffusion systems.
//!
//! The diffusion term is discretized by sixth-order flux-difference kernels,
//! either the plain finite-difference stencil (FD6) or one of three WENO
//! variants built for parabolic terms (WENO-LSZ, MWENO, CWENO); time is
//! advanced by the explicit TVD-RK3 method with `dt = cfl * dx^2`. The crate
//! ships the kinetics and exact wave profiles of five benchmark models
//! (Fisher, Zeldovich, Newell-Whitehead-Segel, bistable, Lotka-Volterra),
//! error/convergence/front-speed diagnostics, and a preset-driven experiment
//! runner with CSV output.

pub mod config;
pub mod diagnostics;
pub mod error;
pub mod grid;
pub mod integrator;
pub mod presets;
pub mod reaction;
pub mod report;
pub mod run;
pub mod stencil;

pub use config::{parse_config, parse_config_with_overrides, ConfigError, RunConfig};
pub use diagnostics::{
    convergence_order, error_norms, front_position, front_speed, front_speed_series,
    front_speed_trailing, ErrorNorms, FrontTrack,
};
pub use error::SolverError;
pub use grid::{
    apply_dirichlet, extend_with_ghosts, BoundarySpec, Grid, StateField, GHOST_WIDTH, MIN_CELLS,
};
pub use integrator::{
    advance, rk3_step, AdvanceOutcome, Observer, Problem, StepOutcome, StepStatus, TimeSpec,
    BLOWUP_THRESHOLD,
};
pub use reaction::ReactionModel;
pub use report::{RunRecord, RunReport, RunStatus, SpeciesRecord};
pub use run::{execute, run, run_table, table_configs, RunError, RunOutput, TableFamily};
pub use stencil::{
    central_flux, central_smoothness, cweno_weights, fd_flux, lsz_weights, mweno_weights,
    second_derivative, second_derivative_extended, smoothness_indicators, substencil_fluxes,
    weno_flux, Scheme, SchemeSpec, StencilWindow,
};
