//! Explicit TVD-RK3 (Shu-Osher) time stepping with parabolic step-size
//! selection and blow-up detection.
//!
//! The step size is `dt = cfl * dx^2`; the final step is truncated so the
//! trajectory lands on the requested time exactly. Dirichlet values are
//! re-imposed after every stage. A state is declared blown up as soon as any
//! value is non-finite or exceeds [`BLOWUP_THRESHOLD`] in magnitude, and the
//! time of the first failed step is reported.

use crate::error::SolverError;
use crate::grid::{
    apply_dirichlet, extend_species_into, BoundarySpec, Grid, StateField, GHOST_WIDTH,
};
use crate::reaction::ReactionModel;
use crate::stencil::{second_derivative_scaled_into, SchemeSpec};

/// Magnitude beyond which a run is declared blown up; far above the physical
/// range (all models stay within [0, 3]) and far below overflow.
pub const BLOWUP_THRESHOLD: f64 = 1e10;

/// Step-size rule and horizon for a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeSpec {
    pub cfl: f64,
    pub t_final: f64,
    pub max_steps: u64,
}

impl TimeSpec {
    pub const DEFAULT_MAX_STEPS: u64 = 50_000_000;

    pub fn new(cfl: f64, t_final: f64) -> Result<Self, String> {
        if !(cfl > 0.0) {
            return Err(format!("cfl must be positive, got {cfl}"));
        }
        if !(t_final >= 0.0) {
            return Err(format!("t_final must be non-negative, got {t_final}"));
        }
        Ok(TimeSpec {
            cfl,
            t_final,
            max_steps: Self::DEFAULT_MAX_STEPS,
        })
    }

    pub fn dt(&self, grid: &Grid) -> f64 {
        self.cfl * grid.dx() * grid.dx()
    }
}

/// Outcome of one or more steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepStatus {
    Ok,
    /// Time of the first step whose result was non-finite or out of bounds.
    BlowUp { t: f64 },
}

impl StepStatus {
    pub fn is_ok(&self) -> bool {
        matches!(self, StepStatus::Ok)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome {
    pub state: StateField,
    pub t: f64,
    pub status: StepStatus,
}

/// A semi-discrete reaction-diffusion problem: grid, Dirichlet data, spatial
/// scheme, and kinetics.
#[derive(Debug, Clone)]
pub struct Problem {
    pub grid: Grid,
    pub bc: BoundarySpec,
    pub scheme: SchemeSpec,
    pub model: ReactionModel,
}

impl Problem {
    pub fn new(
        grid: Grid,
        bc: BoundarySpec,
        scheme: SchemeSpec,
        model: ReactionModel,
    ) -> Result<Self, SolverError> {
        if bc.species_count() != model.species_count() {
            return Err(SolverError::ShapeMismatch {
                context: "problem species",
                expected: model.species_count(),
                actual: bc.species_count(),
            });
        }
        Ok(Problem {
            grid,
            bc,
            scheme,
            model,
        })
    }

    /// Problem with the model's own equilibria as Dirichlet data.
    pub fn with_model_boundaries(grid: Grid, scheme: SchemeSpec, model: ReactionModel) -> Self {
        Problem {
            grid,
            bc: model.boundary_spec(),
            scheme,
            model,
        }
    }

    /// Right-hand side `D_s u_xx + R(u)` per species at interior nodes;
    /// boundary entries are zero (endpoints are pinned).
    pub fn rhs(&self, state: &StateField) -> Result<StateField, SolverError> {
        if state.points() != self.grid.points()
            || state.species_count() != self.model.species_count()
        {
            return Err(SolverError::ShapeMismatch {
                context: "rhs state",
                expected: self.grid.points() * self.model.species_count(),
                actual: state.points() * state.species_count(),
            });
        }
        let mut extended = Vec::new();
        let mut flux = Vec::new();
        let mut field = StateField::zeros(state.species_count(), state.points());
        let mut out = vec![0.0; state.data().len()];
        self.rhs_raw(state.data(), &mut extended, &mut flux, &mut out);
        field.data_mut().copy_from_slice(&out);
        Ok(field)
    }

    /// Hot-path rhs on a species-major raw buffer; `extended` and `corr` are
    /// scratch vectors reused across calls.
    fn rhs_raw(&self, data: &[f64], extended: &mut Vec<f64>, corr: &mut Vec<f64>, out: &mut [f64]) {
        let n = self.grid.points();
        let inv_dx2 = 1.0 / (self.grid.dx() * self.grid.dx());
        let diffusion = self.model.diffusion();

        for s in 0..self.model.species_count() {
            extend_species_into(
                &data[s * n..(s + 1) * n],
                self.bc.left(s),
                self.bc.right(s),
                GHOST_WIDTH,
                extended,
            );
            let out_s = &mut out[s * n..(s + 1) * n];
            second_derivative_scaled_into(extended, diffusion[s] * inv_dx2, &self.scheme, corr, out_s);
            out_s[0] = 0.0;
            out_s[n - 1] = 0.0;
        }

        match self.model {
            ReactionModel::LotkaVolterra { rho, .. } => {
                let (u, v) = data.split_at(n);
                let (out_u, out_v) = out.split_at_mut(n);
                for i in 1..n - 1 {
                    out_u[i] += rho * u[i] * (1.0 - u[i] - v[i]);
                    out_v[i] += rho * v[i] * (3.0 - 4.0 * u[i] - v[i]);
                }
            }
            ReactionModel::Fisher { rho, .. } => {
                for i in 1..n - 1 {
                    out[i] += rho * data[i] * (1.0 - data[i]);
                }
            }
            ReactionModel::Zeldovich { rho, .. } => {
                for i in 1..n - 1 {
                    out[i] += rho * data[i] * data[i] * (1.0 - data[i]);
                }
            }
            ReactionModel::Nws { rho, alpha, .. } => {
                for i in 1..n - 1 {
                    out[i] += rho * data[i] * (1.0 - data[i].powf(alpha));
                }
            }
            ReactionModel::Bistable { rho, beta, .. } => {
                for i in 1..n - 1 {
                    out[i] += rho * data[i] * (1.0 - data[i]) * (data[i] - beta);
                }
            }
        }
    }

    pub fn pin(&self, state: &mut StateField) {
        apply_dirichlet(state, &self.bc);
    }

    fn pin_raw(&self, data: &mut [f64]) {
        let n = self.grid.points();
        for s in 0..self.model.species_count() {
            data[s * n] = self.bc.left(s);
            data[s * n + n - 1] = self.bc.right(s);
        }
    }
}

// Shu-Osher stages in increment form: algebraically the standard convex
// combinations, but a fixed point (u unchanged, rhs zero) is preserved to
// the bit, which keeps equilibria exactly stationary.

#[inline]
fn stage1(u: &[f64], k: &[f64], dt: f64, out: &mut [f64]) {
    for i in 0..u.len() {
        out[i] = u[i] + dt * k[i];
    }
}

#[inline]
fn stage2(u: &[f64], u1: &[f64], k1: &[f64], dt: f64, out: &mut [f64]) {
    for i in 0..u.len() {
        out[i] = u[i] + 0.25 * ((u1[i] - u[i]) + dt * k1[i]);
    }
}

#[inline]
fn stage3(u: &[f64], u2: &[f64], k2: &[f64], dt: f64, out: &mut [f64]) {
    const TWO_THIRDS: f64 = 2.0 / 3.0;
    for i in 0..u.len() {
        out[i] = u[i] + TWO_THIRDS * ((u2[i] - u[i]) + dt * k2[i]);
    }
}

#[inline]
fn out_of_bounds(data: &[f64]) -> bool {
    // The negated comparison also catches NaN.
    data.iter().any(|v| !(v.abs() <= BLOWUP_THRESHOLD))
}

/// One Shu-Osher TVD-RK3 step with a caller-supplied right-hand side and
/// per-stage constraint (e.g. Dirichlet pinning). `t` names the time at the
/// start of the step. A blow-up in any stage is reported at `t + dt` and the
/// returned state is the last accepted one (the input).
pub fn rk3_step<R, C>(
    state: &StateField,
    t: f64,
    dt: f64,
    mut rhs: R,
    mut constrain: C,
) -> StepOutcome
where
    R: FnMut(&StateField) -> StateField,
    C: FnMut(&mut StateField),
{
    let species = state.species_count();
    let points = state.points();
    let blowup = |state: StateField, t: f64| StepOutcome {
        state,
        t,
        status: StepStatus::BlowUp { t },
    };

    let k = rhs(state);
    let mut u1 = StateField::zeros(species, points);
    stage1(state.data(), k.data(), dt, u1.data_mut());
    constrain(&mut u1);
    if out_of_bounds(u1.data()) {
        return blowup(state.clone(), t + dt);
    }

    let k1 = rhs(&u1);
    let mut u2 = StateField::zeros(species, points);
    stage2(state.data(), u1.data(), k1.data(), dt, u2.data_mut());
    constrain(&mut u2);
    if out_of_bounds(u2.data()) {
        return blowup(state.clone(), t + dt);
    }

    let k2 = rhs(&u2);
    let mut next = StateField::zeros(species, points);
    stage3(state.data(), u2.data(), k2.data(), dt, next.data_mut());
    constrain(&mut next);
    if out_of_bounds(next.data()) {
        return blowup(state.clone(), t + dt);
    }

    StepOutcome {
        state: next,
        t: t + dt,
        status: StepStatus::Ok,
    }
}

/// Trajectory hook invoked with the initial state (step 0) and after every
/// accepted step. Observers must not mutate the state.
pub trait Observer {
    fn observe(&mut self, step: u64, t: f64, state: &StateField);
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdvanceOutcome {
    pub state: StateField,
    pub t: f64,
    pub steps: u64,
    pub status: StepStatus,
}

/// March the problem from `state0` to `time.t_final` with `dt = cfl * dx^2`.
/// Returns after the first blow-up, reporting the time of the failed step.
pub fn advance(
    problem: &Problem,
    state0: StateField,
    time: &TimeSpec,
    observers: &mut [&mut dyn Observer],
) -> Result<AdvanceOutcome, SolverError> {
    if state0.points() != problem.grid.points()
        || state0.species_count() != problem.model.species_count()
    {
        return Err(SolverError::ShapeMismatch {
            context: "advance state",
            expected: problem.grid.points() * problem.model.species_count(),
            actual: state0.points() * state0.species_count(),
        });
    }
    let dt_base = time.dt(&problem.grid);
    let len = state0.data().len();
    let mut extended: Vec<f64> = Vec::new();
    let mut corr: Vec<f64> = Vec::new();
    let mut k = vec![0.0; len];
    let mut u1 = vec![0.0; len];
    let mut u2 = vec![0.0; len];

    let mut state = state0;
    problem.pin(&mut state);
    let mut t = 0.0;
    let mut steps: u64 = 0;

    for obs in observers.iter_mut() {
        obs.observe(0, 0.0, &state);
    }

    while t < time.t_final {
        if steps >= time.max_steps {
            return Err(SolverError::StepLimitExceeded {
                max_steps: time.max_steps,
                t_final: time.t_final,
            });
        }
        let remaining = time.t_final - t;
        // Absorb accumulated rounding into the final step so the step count
        // matches the exact-arithmetic value.
        let last = remaining <= dt_base * (1.0 + 1e-9);
        let dt = if last { remaining } else { dt_base };

        let mut blown = false;

        problem.rhs_raw(state.data(), &mut extended, &mut corr, &mut k);
        stage1(state.data(), &k, dt, &mut u1);
        problem.pin_raw(&mut u1);
        blown |= out_of_bounds(&u1);

        if !blown {
            problem.rhs_raw(&u1, &mut extended, &mut corr, &mut k);
            stage2(state.data(), &u1, &k, dt, &mut u2);
            problem.pin_raw(&mut u2);
            blown |= out_of_bounds(&u2);
        }

        if !blown {
            problem.rhs_raw(&u2, &mut extended, &mut corr, &mut k);
            // u1 is free again after stage 2; reuse it for the result so the
            // current state survives when this stage diverges.
            stage3(state.data(), &u2, &k, dt, &mut u1);
            problem.pin_raw(&mut u1);
            blown |= out_of_bounds(&u1);
            if !blown {
                state.data_mut().copy_from_slice(&u1);
            }
        }

        steps += 1;

        if blown {
            return Ok(AdvanceOutcome {
                state,
                t: t + dt,
                steps,
                status: StepStatus::BlowUp { t: t + dt },
            });
        }

        t = if last { time.t_final } else { steps as f64 * dt_base };
        for obs in observers.iter_mut() {
            obs.observe(steps, t, &state);
        }
    }

    Ok(AdvanceOutcome {
        state,
        t,
        steps,
        status: StepStatus::Ok,
    })
}
