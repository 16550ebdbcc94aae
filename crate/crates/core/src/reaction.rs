//! Reaction kinetics and closed-form traveling-wave solutions.
//!
//! Five models: Fisher, Zeldovich, Newell-Whitehead-Segel (NWS), bistable,
//! and the two-species Lotka-Volterra competition system. Each provides its
//! source term, the exact wave profile, the signed wave speed, and the
//! per-species diffusion coefficients. The exact profiles serve both as
//! initial data and as the error oracle.

use crate::error::SolverError;
use crate::grid::{BoundarySpec, Grid, StateField};

/// Arguments of `exp` beyond this are clamped to the asymptotic limit of the
/// closed form; large reaction coefficients push the exponent past overflow
/// at the domain ends.
const EXP_CLAMP: f64 = 700.0;

/// A reaction-diffusion model with its parameters.
///
/// `d` is the diffusion coefficient and `rho` the reaction coefficient; the
/// NWS exponent `alpha` and the bistable parameter `beta` appear only in
/// their variants. Lotka-Volterra couples two species with diffusion
/// `(d, d/3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReactionModel {
    Fisher { d: f64, rho: f64 },
    Zeldovich { d: f64, rho: f64 },
    Nws { d: f64, rho: f64, alpha: f64 },
    Bistable { d: f64, rho: f64, beta: f64 },
    LotkaVolterra { d: f64, rho: f64 },
}

use ReactionModel::*;

impl ReactionModel {
    pub fn fisher(d: f64, rho: f64) -> Result<Self, String> {
        check_positive(d, rho)?;
        Ok(Fisher { d, rho })
    }

    pub fn zeldovich(d: f64, rho: f64) -> Result<Self, String> {
        check_positive(d, rho)?;
        Ok(Zeldovich { d, rho })
    }

    pub fn nws(d: f64, rho: f64, alpha: f64) -> Result<Self, String> {
        check_positive(d, rho)?;
        if !(alpha >= 1.0) {
            return Err(format!("nws exponent alpha must be >= 1, got {alpha}"));
        }
        Ok(Nws { d, rho, alpha })
    }

    pub fn bistable(d: f64, rho: f64, beta: f64) -> Result<Self, String> {
        check_positive(d, rho)?;
        if !(beta > 0.0 && beta < 1.0) {
            return Err(format!("bistable beta must lie in (0,1), got {beta}"));
        }
        Ok(Bistable { d, rho, beta })
    }

    pub fn lotka_volterra(d: f64, rho: f64) -> Result<Self, String> {
        check_positive(d, rho)?;
        Ok(LotkaVolterra { d, rho })
    }

    pub fn species_count(&self) -> usize {
        match self {
            LotkaVolterra { .. } => 2,
            _ => 1,
        }
    }

    pub fn d(&self) -> f64 {
        match *self {
            Fisher { d, .. }
            | Zeldovich { d, .. }
            | Nws { d, .. }
            | Bistable { d, .. }
            | LotkaVolterra { d, .. } => d,
        }
    }

    pub fn rho(&self) -> f64 {
        match *self {
            Fisher { rho, .. }
            | Zeldovich { rho, .. }
            | Nws { rho, .. }
            | Bistable { rho, .. }
            | LotkaVolterra { rho, .. } => rho,
        }
    }

    /// NWS exponent, when the model has one.
    pub fn alpha(&self) -> Option<f64> {
        match *self {
            Nws { alpha, .. } => Some(alpha),
            _ => None,
        }
    }

    /// Bistable parameter, when the model has one.
    pub fn beta(&self) -> Option<f64> {
        match *self {
            Bistable { beta, .. } => Some(beta),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Fisher { .. } => "fisher",
            Zeldovich { .. } => "zeldovich",
            Nws { .. } => "nws",
            Bistable { .. } => "bistable",
            LotkaVolterra { .. } => "lotka-volterra",
        }
    }

    /// Source term `R(u)`, componentwise over the species vector.
    pub fn reaction_term(&self, u: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.species_count()];
        self.reaction_term_into(u, &mut out);
        out
    }

    #[inline]
    pub fn reaction_term_into(&self, u: &[f64], out: &mut [f64]) {
        match *self {
            Fisher { rho, .. } => out[0] = rho * u[0] * (1.0 - u[0]),
            Zeldovich { rho, .. } => out[0] = rho * u[0] * u[0] * (1.0 - u[0]),
            Nws { rho, alpha, .. } => out[0] = rho * u[0] * (1.0 - u[0].powf(alpha)),
            Bistable { rho, beta, .. } => out[0] = rho * u[0] * (1.0 - u[0]) * (u[0] - beta),
            LotkaVolterra { rho, .. } => {
                out[0] = rho * u[0] * (1.0 - u[0] - u[1]);
                out[1] = rho * u[1] * (3.0 - 4.0 * u[0] - u[1]);
            }
        }
    }

    /// Exact traveling-wave profile at `(x, t)`, clamped to the asymptotic
    /// equilibrium when the exponential argument would overflow.
    pub fn exact_solution(&self, x: f64, t: f64) -> Vec<f64> {
        match *self {
            Fisher { d, rho } => {
                let s = (rho / (6.0 * d)).sqrt() * (x - 5.0 * (rho * d / 6.0).sqrt() * t);
                let u = if s > EXP_CLAMP {
                    0.0
                } else if s < -EXP_CLAMP {
                    1.0
                } else {
                    let e = 1.0 + s.exp();
                    1.0 / (e * e)
                };
                vec![u]
            }
            Zeldovich { d, rho } => {
                let s = (rho / (2.0 * d)).sqrt() * (x - (rho * d / 2.0).sqrt() * t);
                let u = if s > EXP_CLAMP {
                    0.0
                } else if s < -EXP_CLAMP {
                    1.0
                } else {
                    1.0 / (1.0 + s.exp())
                };
                vec![u]
            }
            Nws { d, rho, alpha } => {
                let speed = (alpha + 4.0) / (2.0 * alpha + 4.0).sqrt() * (rho * d).sqrt();
                let y = -alpha / (2.0 * (2.0 * alpha + 4.0).sqrt()) * (rho / d).sqrt()
                    * (x - speed * t);
                let base = 0.5 * y.tanh() + 0.5;
                vec![base.powf(2.0 / alpha)]
            }
            Bistable { d, rho, beta } => {
                let y = (1.0 - beta) / 4.0
                    * (2.0 * rho / d).sqrt()
                    * (x + (1.0 + beta) * (rho * d / 2.0).sqrt() * t);
                vec![0.5 * (1.0 + beta) + 0.5 * (1.0 - beta) * y.tanh()]
            }
            LotkaVolterra { d, rho } => {
                let y = 0.5 * (3.0 * rho / (2.0 * d)).sqrt() * (x - (rho * d / 6.0).sqrt() * t);
                let th = y.tanh();
                let u = 0.5 * (1.0 + th);
                let one_minus = 1.0 - th;
                let v = 0.75 * one_minus * one_minus;
                vec![u, v]
            }
        }
    }

    /// Signed front speed read off the time dependence of the exact profile;
    /// the bistable front moves in the negative direction.
    pub fn exact_speed(&self) -> f64 {
        match *self {
            Fisher { d, rho } => 5.0 * (rho * d / 6.0).sqrt(),
            Zeldovich { d, rho } => (rho * d / 2.0).sqrt(),
            Nws { d, rho, alpha } => (alpha + 4.0) / (2.0 * alpha + 4.0).sqrt() * (rho * d).sqrt(),
            Bistable { d, rho, beta } => -(1.0 + beta) * (rho * d / 2.0).sqrt(),
            LotkaVolterra { d, rho } => (rho * d / 6.0).sqrt(),
        }
    }

    /// Per-species diffusion coefficients.
    pub fn diffusion(&self) -> Vec<f64> {
        match *self {
            LotkaVolterra { d, .. } => vec![d, d / 3.0],
            _ => vec![self.d()],
        }
    }

    /// Equilibrium states the wave connects: `(limit at -inf, limit at +inf)`
    /// per species. These are the Dirichlet values of every experiment.
    pub fn equilibria(&self) -> (Vec<f64>, Vec<f64>) {
        match *self {
            Fisher { .. } | Zeldovich { .. } | Nws { .. } => (vec![1.0], vec![0.0]),
            Bistable { beta, .. } => (vec![beta], vec![1.0]),
            LotkaVolterra { .. } => (vec![0.0, 3.0], vec![1.0, 0.0]),
        }
    }

    /// Dirichlet boundary values (the equilibria) as a `BoundarySpec`.
    pub fn boundary_spec(&self) -> BoundarySpec {
        let (left, right) = self.equilibria();
        BoundarySpec::new(left, right).expect("equilibria are well-formed")
    }

    /// Exact profile sampled on the grid at time `t`.
    pub fn sample_exact(&self, grid: &Grid, t: f64) -> StateField {
        let mut field = StateField::zeros(self.species_count(), grid.points());
        for i in 0..grid.points() {
            let values = self.exact_solution(grid.x(i), t);
            for (s, v) in values.iter().enumerate() {
                field.species_mut(s)[i] = *v;
            }
        }
        field
    }

    /// Natural front-tracking level: the midpoint of the connected
    /// equilibria of the leading species.
    pub fn front_level(&self) -> f64 {
        match *self {
            Bistable { beta, .. } => 0.5 * (1.0 + beta),
            _ => 0.5,
        }
    }
}

fn check_positive(d: f64, rho: f64) -> Result<(), String> {
    if !(d > 0.0) {
        return Err(format!("diffusion coefficient must be positive, got {d}"));
    }
    if !(rho > 0.0) {
        return Err(format!("reaction coefficient must be positive, got {rho}"));
    }
    Ok(())
}

/// Validate a state against a model the way the experiments expect it.
pub fn matches_model(field: &StateField, model: &ReactionModel) -> Result<(), SolverError> {
    if field.species_count() != model.species_count() {
        return Err(SolverError::ShapeMismatch {
            context: "state species",
            expected: model.species_count(),
            actual: field.species_count(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_near(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol,
            "expected {expected}, got {actual}"
        );
    }

    #[test]
    fn constructors_validate_parameters() {
        assert!(ReactionModel::fisher(0.0, 1.0).is_err());
        assert!(ReactionModel::fisher(1.0, -1.0).is_err());
        assert!(ReactionModel::nws(1.0, 1.0, 0.5).is_err());
        assert!(ReactionModel::bistable(1.0, 1.0, 1.0).is_err());
        assert!(ReactionModel::bistable(1.0, 1.0, 0.0).is_err());
        assert!(ReactionModel::nws(1.0, 1.0, 2.5).is_ok());
    }

    #[test]
    fn reaction_terms_vanish_at_equilibria() {
        let models = [
            ReactionModel::fisher(1.0, 1e4).unwrap(),
            ReactionModel::zeldovich(1.0, 9000.0).unwrap(),
            ReactionModel::nws(1.0, 5000.0, 2.0).unwrap(),
            ReactionModel::bistable(1.0, 1e4, 0.2).unwrap(),
            ReactionModel::lotka_volterra(1.0, 7000.0).unwrap(),
        ];
        for model in models {
            let (left, right) = model.equilibria();
            for eq in [left, right] {
                let r = model.reaction_term(&eq);
                assert!(
                    r.iter().all(|&v| v == 0.0),
                    "{}: R({eq:?}) = {r:?}",
                    model.kind_name()
                );
            }
        }
        // Interior equilibrium of the bistable kinetics.
        let bistable = ReactionModel::bistable(1.0, 1e4, 0.2).unwrap();
        assert_eq!(bistable.reaction_term(&[0.2])[0], 0.0);
    }

    #[test]
    fn lotka_volterra_reaction_hand_value() {
        let model = ReactionModel::lotka_volterra(1.0, 7000.0).unwrap();
        let r = model.reaction_term(&[0.5, 0.75]);
        assert_near(r[0], -875.0, 1e-9);
        assert_near(r[1], 1312.5, 1e-9);
    }

    #[test]
    fn exact_profiles_at_the_origin() {
        let fisher = ReactionModel::fisher(1.0, 1e4).unwrap();
        assert_near(fisher.exact_solution(0.0, 0.0)[0], 0.25, 1e-15);

        let nws = ReactionModel::nws(1.0, 5000.0, 2.0).unwrap();
        assert_near(nws.exact_solution(0.0, 0.0)[0], 0.5, 1e-15);

        let bistable = ReactionModel::bistable(1.0, 1e4, 0.2).unwrap();
        assert_near(bistable.exact_solution(0.0, 0.0)[0], 0.6, 1e-15);

        let lv = ReactionModel::lotka_volterra(1.0, 7000.0).unwrap();
        let uv = lv.exact_solution(0.0, 0.0);
        assert_near(uv[0], 0.5, 1e-15);
        assert_near(uv[1], 0.75, 1e-15);
    }

    #[test]
    fn lotka_volterra_initial_profile_matches_tanh_form() {
        // u(x,0) = (1 + tanh(5 sqrt(105) x)) / 2 for rho = 7000, D = 1.
        let lv = ReactionModel::lotka_volterra(1.0, 7000.0).unwrap();
        for &x in &[-0.01, -0.003, 0.0, 0.002, 0.014] {
            let arg = 5.0 * 105.0f64.sqrt() * x;
            let expect_u = 0.5 * (1.0 + arg.tanh());
            let expect_v = 0.75 * (1.0 - arg.tanh()) * (1.0 - arg.tanh());
            let got = lv.exact_solution(x, 0.0);
            assert_near(got[0], expect_u, 1e-13);
            assert_near(got[1], expect_v, 1e-13);
        }
    }

    #[test]
    fn exact_speeds() {
        let fisher = ReactionModel::fisher(1.0, 1e4).unwrap();
        assert_near(fisher.exact_speed(), 5.0 * (1e4f64 / 6.0).sqrt(), 1e-10);
        assert_near(fisher.exact_speed(), 204.1241452, 1e-6);

        let nws = ReactionModel::nws(1.0, 1e4, 2.0).unwrap();
        assert_near(nws.exact_speed(), 6.0 / 8.0f64.sqrt() * 100.0, 1e-10);
        assert_near(nws.exact_speed(), 212.1320344, 1e-6);

        // NWS with alpha = 1 is the Fisher kinetics again.
        let nws1 = ReactionModel::nws(1.0, 1e4, 1.0).unwrap();
        assert_near(nws1.exact_speed(), fisher.exact_speed(), 1e-10);

        let bistable = ReactionModel::bistable(1.0, 1e4, 0.2).unwrap();
        assert!(bistable.exact_speed() < 0.0);
        assert_near(bistable.exact_speed(), -1.2 * (1e4f64 / 2.0).sqrt(), 1e-10);

        let lv = ReactionModel::lotka_volterra(1.0, 7000.0).unwrap();
        assert_near(lv.exact_speed(), (7000.0f64 / 6.0).sqrt(), 1e-10);
    }

    #[test]
    fn minimum_speed_reference_value() {
        // 2 sqrt(rho D) for Fisher-type kinetics.
        let c_min = 2.0 * (1e4f64 * 1.0).sqrt();
        assert_eq!(c_min, 200.0);
    }

    #[test]
    fn diffusion_coefficients() {
        let fisher = ReactionModel::fisher(1.0, 1e4).unwrap();
        assert_eq!(fisher.diffusion(), vec![1.0]);
        let lv = ReactionModel::lotka_volterra(1.0, 7000.0).unwrap();
        assert_eq!(lv.diffusion(), vec![1.0, 1.0 / 3.0]);
        let lv3 = ReactionModel::lotka_volterra(3.0, 7000.0).unwrap();
        assert_eq!(lv3.diffusion(), vec![3.0, 1.0]);
    }

    #[test]
    fn profiles_saturate_instead_of_overflowing() {
        let fisher = ReactionModel::fisher(1.0, 1e4).unwrap();
        assert_eq!(fisher.exact_solution(1e6, 0.0)[0], 0.0);
        assert_eq!(fisher.exact_solution(-1e6, 0.0)[0], 1.0);
        let zeldovich = ReactionModel::zeldovich(1.0, 9000.0).unwrap();
        assert_eq!(zeldovich.exact_solution(1e6, 0.0)[0], 0.0);
        assert_eq!(zeldovich.exact_solution(-1e6, 0.0)[0], 1.0);
        let nws = ReactionModel::nws(1.0, 5000.0, 3.0).unwrap();
        assert_eq!(nws.exact_solution(1e6, 0.0)[0], 0.0);
        assert_eq!(nws.exact_solution(-1e6, 0.0)[0], 1.0);
    }

    #[test]
    fn profiles_stay_in_physical_range() {
        let models = [
            ReactionModel::fisher(1.0, 1e4).unwrap(),
            ReactionModel::zeldovich(1.0, 9000.0).unwrap(),
            ReactionModel::nws(1.0, 5000.0, 2.0).unwrap(),
            ReactionModel::bistable(1.0, 1e4, 0.2).unwrap(),
            ReactionModel::lotka_volterra(1.0, 7000.0).unwrap(),
        ];
        for model in models {
            let (lo, hi): (Vec<f64>, Vec<f64>) = match model {
                Bistable { beta, .. } => (vec![beta], vec![1.0]),
                LotkaVolterra { .. } => (vec![0.0, 0.0], vec![1.0, 3.0]),
                _ => (vec![0.0], vec![1.0]),
            };
            for i in 0..=400 {
                let x = -2.0 + i as f64 * 0.01;
                let u = model.exact_solution(x, 1e-4);
                for s in 0..model.species_count() {
                    assert!(
                        u[s] >= lo[s] - 1e-12 && u[s] <= hi[s] + 1e-12,
                        "{} species {s} at x = {x}: {}",
                        model.kind_name(),
                        u[s]
                    );
                }
            }
        }
    }

    #[test]
    fn traveling_wave_shift_identity() {
        let models = [
            ReactionModel::fisher(1.0, 1e4).unwrap(),
            ReactionModel::zeldovich(1.0, 9000.0).unwrap(),
            ReactionModel::nws(1.0, 5000.0, 2.0).unwrap(),
            ReactionModel::bistable(1.0, 1e4, 0.2).unwrap(),
            ReactionModel::lotka_volterra(1.0, 7000.0).unwrap(),
        ];
        for model in models {
            let c = model.exact_speed();
            for &x in &[-0.05, -0.01, 0.0, 0.02, 0.07] {
                for &(t, dt) in &[(1e-4, 5e-5), (3e-4, 1e-4), (1e-3, 2.5e-4)] {
                    let direct = model.exact_solution(x, t);
                    let shifted = model.exact_solution(x - c * dt, t - dt);
                    for s in 0..model.species_count() {
                        assert!(
                            (direct[s] - shifted[s]).abs() <= 1e-12,
                            "{} s={s} x={x} t={t}: {} vs {}",
                            model.kind_name(),
                            direct[s],
                            shifted[s]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn exact_solution_satisfies_the_pde() {
        // Central differences (h = 1e-5) on the closed form near the front;
        // the residual must be small relative to the reaction scale rho.
        let models = [
            ReactionModel::fisher(1.0, 1e4).unwrap(),
            ReactionModel::zeldovich(1.0, 9000.0).unwrap(),
            ReactionModel::nws(1.0, 5000.0, 2.0).unwrap(),
            ReactionModel::nws(1.0, 1e4, 3.0).unwrap(),
            ReactionModel::bistable(1.0, 1e4, 0.2).unwrap(),
            ReactionModel::lotka_volterra(1.0, 7000.0).unwrap(),
        ];
        let h = 1e-5;
        for model in models {
            let diffusion = model.diffusion();
            let rho = model.rho();
            for &x in &[-0.02, -0.005, 0.0, 0.004, 0.018] {
                let t = 2e-4;
                let u = model.exact_solution(x, t);
                let u_xp = model.exact_solution(x + h, t);
                let u_xm = model.exact_solution(x - h, t);
                let u_tp = model.exact_solution(x, t + h);
                let u_tm = model.exact_solution(x, t - h);
                let r = model.reaction_term(&u);
                for s in 0..model.species_count() {
                    let u_t = (u_tp[s] - u_tm[s]) / (2.0 * h);
                    let u_xx = (u_xp[s] - 2.0 * u[s] + u_xm[s]) / (h * h);
                    let residual = u_t - diffusion[s] * u_xx - r[s];
                    assert!(
                        residual.abs() <= 1e-3 * rho,
                        "{} species {s} at x = {x}: residual {residual}",
                        model.kind_name()
                    );
                }
            }
        }
    }
}
