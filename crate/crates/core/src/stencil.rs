//! Sixth-order flux-difference kernels for the diffusion term.
//!
//! The second derivative at a node is written as a difference of numerical
//! fluxes at the neighboring half points, `(g_{i+1/2} - g_{i-1/2}) / dx^2`.
//! Each flux is built from the 6-point window `u_{i-2}..u_{i+3}`, either with
//! the full-stencil linear combination (FD6) or as a nonlinearly weighted
//! combination of three 4-point substencil fluxes (WENO-LSZ, MWENO) plus an
//! optional high-order central candidate (CWENO).
//!
//! Every kernel evaluates the window relative to its third entry (the cell
//! value `u_i`). All candidate fluxes and smoothness indicators annihilate
//! constants, so this is algebraically neutral and keeps constant states
//! exactly at zero flux, which in turn keeps equilibria stationary to the bit.

use crate::error::SolverError;

/// The 6-point flux window `(u_{i-2}, u_{i-1}, u_i, u_{i+1}, u_{i+2}, u_{i+3})`
/// for the flux at `i + 1/2`.
pub type StencilWindow = [f64; 6];

/// Spatial scheme selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Fd6,
    WenoLsz,
    Mweno,
    Cweno,
}

impl Scheme {
    /// Regularizer used in the weight denominators; unused by FD6.
    pub fn default_epsilon(self) -> f64 {
        match self {
            Scheme::Fd6 => 0.0,
            Scheme::WenoLsz => 1e-6,
            Scheme::Mweno => 1e-30,
            Scheme::Cweno => 1e-40,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Fd6 => "fd6",
            Scheme::WenoLsz => "weno-lsz",
            Scheme::Mweno => "mweno",
            Scheme::Cweno => "cweno",
        }
    }

    pub fn parse(name: &str) -> Option<Scheme> {
        match name {
            "fd6" | "fd" => Some(Scheme::Fd6),
            "weno-lsz" | "lsz" => Some(Scheme::WenoLsz),
            "mweno" => Some(Scheme::Mweno),
            "cweno" => Some(Scheme::Cweno),
            _ => None,
        }
    }

    pub const ALL: [Scheme; 4] = [Scheme::Fd6, Scheme::WenoLsz, Scheme::Mweno, Scheme::Cweno];
}

/// A scheme plus its regularizer epsilon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeSpec {
    pub kind: Scheme,
    pub epsilon: f64,
}

impl SchemeSpec {
    /// Scheme with its standard epsilon.
    pub fn new(kind: Scheme) -> Self {
        SchemeSpec {
            kind,
            epsilon: kind.default_epsilon(),
        }
    }

    pub fn with_epsilon(kind: Scheme, epsilon: f64) -> Self {
        SchemeSpec { kind, epsilon }
    }

    pub fn is_valid(&self) -> bool {
        self.kind == Scheme::Fd6 || self.epsilon > 0.0
    }
}

// Stencil coefficients and linear weights, stored as exact rationals and
// rendered to the nearest double at compile time.

/// Full 6-point flux: coefficients of `u_{i-2}..u_{i+3}` for `g_{i+1/2}`.
pub const FD6_COEFFS: [f64; 6] = [
    -1.0 / 90.0,
    5.0 / 36.0,
    -49.0 / 36.0,
    49.0 / 36.0,
    -5.0 / 36.0,
    1.0 / 90.0,
];

/// Substencil fluxes: row `k` holds the coefficients of `u_{i-2+k}..u_{i+1+k}`.
pub const SUBSTENCIL_COEFFS: [[f64; 4]; 3] = [
    [1.0 / 12.0, -1.0 / 4.0, -3.0 / 4.0, 11.0 / 12.0],
    [1.0 / 12.0, -5.0 / 4.0, 5.0 / 4.0, -1.0 / 12.0],
    [-11.0 / 12.0, 3.0 / 4.0, 1.0 / 4.0, -1.0 / 12.0],
];

/// High-order central candidate flux over the full window.
pub const CENTRAL_COEFFS: [f64; 6] = [
    -3.0 / 40.0,
    11.0 / 24.0,
    -2.0,
    2.0,
    -11.0 / 24.0,
    3.0 / 40.0,
];

/// Linear weights recovering the FD6 flux from the substencil fluxes.
pub const LINEAR_D: [f64; 3] = [-2.0 / 15.0, 19.0 / 15.0, -2.0 / 15.0];

/// Positive/negative split of the linear weights: `d_k = s+ g+_k - s- g-_k`.
pub const SIGMA_PLUS: f64 = 42.0 / 15.0;
pub const SIGMA_MINUS: f64 = 27.0 / 15.0;
pub const GAMMA_PLUS: [f64; 3] = [1.0 / 21.0, 19.0 / 21.0, 1.0 / 21.0];
pub const GAMMA_MINUS: [f64; 3] = [4.0 / 27.0, 19.0 / 27.0, 4.0 / 27.0];

/// Positive linear weights of the central variant, ordered `(t0, t1, t2, tC)`.
pub const THETA: [f64; 4] = [1.0 / 6.0, 1.0 / 3.0, 1.0 / 6.0, 1.0 / 3.0];

#[inline]
fn centered(w: &StencilWindow) -> StencilWindow {
    let c = w[2];
    [w[0] - c, w[1] - c, 0.0, w[3] - c, w[4] - c, w[5] - c]
}

#[inline]
fn dot6(c: &[f64; 6], v: &StencilWindow) -> f64 {
    c[0] * v[0] + c[1] * v[1] + c[2] * v[2] + c[3] * v[3] + c[4] * v[4] + c[5] * v[5]
}

/// Full-stencil sixth-order flux at `i + 1/2`.
#[inline]
pub fn fd_flux(w: &StencilWindow) -> f64 {
    let v = centered(w);
    dot6(&FD6_COEFFS, &v)
}

/// The three 4-point substencil fluxes `(g^0, g^1, g^2)` at `i + 1/2`.
#[inline]
pub fn substencil_fluxes(w: &StencilWindow) -> [f64; 3] {
    let v = centered(w);
    let c = &SUBSTENCIL_COEFFS;
    [
        c[0][0] * v[0] + c[0][1] * v[1] + c[0][2] * v[2] + c[0][3] * v[3],
        c[1][0] * v[1] + c[1][1] * v[2] + c[1][2] * v[3] + c[1][3] * v[4],
        c[2][0] * v[2] + c[2][1] * v[3] + c[2][2] * v[4] + c[2][3] * v[5],
    ]
}

/// Central candidate flux at `i + 1/2` over the full window.
#[inline]
pub fn central_flux(w: &StencilWindow) -> f64 {
    let v = centered(w);
    dot6(&CENTRAL_COEFFS, &v)
}

/// Substencil smoothness indicators `(b0, b1, b2)`; non-negative, zero on
/// constant and linear data.
#[inline]
pub fn smoothness_indicators(w: &StencilWindow) -> [f64; 3] {
    let v = centered(w);
    let b0a = v[0] - 3.0 * v[1] + 3.0 * v[2] - v[3];
    let b0b = v[0] - 5.0 * v[1] + 7.0 * v[2] - 3.0 * v[3];
    let b1a = v[1] - 3.0 * v[2] + 3.0 * v[3] - v[4];
    let b1b = v[1] - v[2] - v[3] + v[4];
    let b2a = v[2] - 3.0 * v[3] + 3.0 * v[4] - v[5];
    let b2b = -3.0 * v[2] + 7.0 * v[3] - 5.0 * v[4] + v[5];
    const C13_12: f64 = 13.0 / 12.0;
    [
        C13_12 * b0a * b0a + 0.25 * b0b * b0b,
        C13_12 * b1a * b1a + 0.25 * b1b * b1b,
        C13_12 * b2a * b2a + 0.25 * b2b * b2b,
    ]
}

/// Rows of the central smoothness indicator: integer difference stencil and
/// rational scale factor. Entered once here and re-transcribed independently
/// in the test suite to guard against coefficient typos.
const BETA_C_ROWS: [([f64; 6], f64); 10] = [
    ([1.0, -5.0, 10.0, -10.0, 5.0, -1.0], 4273.0 / 20160.0),
    ([5.0, 11.0, -70.0, 94.0, -47.0, 7.0], 29.0 / 345600.0),
    ([35.0, -139.0, 230.0, -206.0, 103.0, -23.0], 1.0 / 3600.0),
    ([7.0, -51.0, 134.0, -166.0, 99.0, -23.0], 1.0 / 576.0),
    ([7.0, -56.0, 106.0, -76.0, 23.0, -4.0], 1.0 / 2304.0),
    ([65.0, -353.0, 690.0, -602.0, 221.0, -21.0], 1.0 / 9216.0),
    ([23.0, -63.0, -34.0, 186.0, -133.0, 21.0], 1.0 / 9216.0),
    ([13.0, -28.0, 30.0, -28.0, 13.0, 0.0], 1.0 / 2304.0),
    ([1.0, -4.0, 6.0, -4.0, 1.0, 0.0], 2.0 / 15.0),
    ([1.0, -12.0, 22.0, -12.0, 1.0, 0.0], 1.0 / 1152.0),
];

/// Smoothness indicator of the central candidate over the full window.
#[inline]
pub fn central_smoothness(w: &StencilWindow) -> f64 {
    let v = centered(w);
    let mut beta = 0.0;
    for (coeffs, scale) in BETA_C_ROWS.iter() {
        let d = dot6(coeffs, &v);
        beta += scale * d * d;
    }
    beta
}

/// Mapping applied to the split nonlinear weights; fixes the linear weight
/// (`g_k(d_k) = d_k` with vanishing derivative there).
#[inline]
fn weight_map(omega: f64, d: f64) -> f64 {
    omega * (d + d * d - 3.0 * d * omega + omega * omega) / (d * d + omega * (1.0 - 2.0 * d))
}

#[inline]
fn split_weights(alpha_plus: [f64; 3], alpha_minus: [f64; 3]) -> [f64; 3] {
    let sp = alpha_plus[0] + alpha_plus[1] + alpha_plus[2];
    let sm = alpha_minus[0] + alpha_minus[1] + alpha_minus[2];
    [
        SIGMA_PLUS * alpha_plus[0] / sp - SIGMA_MINUS * alpha_minus[0] / sm,
        SIGMA_PLUS * alpha_plus[1] / sp - SIGMA_MINUS * alpha_minus[1] / sm,
        SIGMA_PLUS * alpha_plus[2] / sp - SIGMA_MINUS * alpha_minus[2] / sm,
    ]
}

/// WENO-LSZ nonlinear weights: split positive/negative weights with squared
/// regularized denominators, recombined, mapped, and renormalized.
pub fn lsz_weights(betas: [f64; 3], eps: f64) -> Result<[f64; 3], SolverError> {
    let mut ap = [0.0; 3];
    let mut am = [0.0; 3];
    for k in 0..3 {
        let denom = betas[k] + eps;
        let denom2 = denom * denom;
        ap[k] = GAMMA_PLUS[k] / denom2;
        am[k] = GAMMA_MINUS[k] / denom2;
    }
    let omega_star = split_weights(ap, am);
    let mapped = [
        weight_map(omega_star[0], LINEAR_D[0]),
        weight_map(omega_star[1], LINEAR_D[1]),
        weight_map(omega_star[2], LINEAR_D[2]),
    ];
    let sum = mapped[0] + mapped[1] + mapped[2];
    if sum == 0.0 {
        return Err(SolverError::DegenerateWeights);
    }
    Ok([mapped[0] / sum, mapped[1] / sum, mapped[2] / sum])
}

/// MWENO nonlinear weights: Z-type split weights built from the global
/// indicator `tau = |b0 - b2|`. The signed result sums to `s+ - s- = 1`.
pub fn mweno_weights(betas: [f64; 3], eps: f64) -> [f64; 3] {
    let tau = (betas[0] - betas[2]).abs();
    let mut ap = [0.0; 3];
    let mut am = [0.0; 3];
    for k in 0..3 {
        let r = tau / (betas[k] + eps);
        let boost = 1.0 + r * r;
        ap[k] = GAMMA_PLUS[k] * boost;
        am[k] = GAMMA_MINUS[k] * boost;
    }
    split_weights(ap, am)
}

/// CWENO nonlinear weights over the four candidates `(0, 1, 2, C)`, built
/// from the global indicator `tau6 = |bC - (5 b0 + 14 b1 + 5 b2)/24|`.
/// All weights are positive and sum to one.
pub fn cweno_weights(betas: [f64; 3], beta_c: f64, eps: f64) -> [f64; 4] {
    let tau6 = (beta_c - (5.0 * betas[0] + 14.0 * betas[1] + 5.0 * betas[2]) / 24.0).abs();
    let alpha = [
        THETA[0] * (1.0 + tau6 / (betas[0] + eps)),
        THETA[1] * (1.0 + tau6 / (betas[1] + eps)),
        THETA[2] * (1.0 + tau6 / (betas[2] + eps)),
        THETA[3] * (1.0 + tau6 / (beta_c + eps)),
    ];
    let sum = alpha[0] + alpha[1] + alpha[2] + alpha[3];
    [alpha[0] / sum, alpha[1] / sum, alpha[2] / sum, alpha[3] / sum]
}

/// Numerical flux at `i + 1/2` for the selected scheme.
pub fn weno_flux(w: &StencilWindow, spec: &SchemeSpec) -> Result<f64, SolverError> {
    match spec.kind {
        Scheme::Fd6 => Ok(fd_flux(w)),
        Scheme::WenoLsz => {
            let g = substencil_fluxes(w);
            let omega = lsz_weights(smoothness_indicators(w), spec.epsilon)?;
            Ok(omega[0] * g[0] + omega[1] * g[1] + omega[2] * g[2])
        }
        Scheme::Mweno => {
            let g = substencil_fluxes(w);
            let omega = mweno_weights(smoothness_indicators(w), spec.epsilon);
            Ok(omega[0] * g[0] + omega[1] * g[1] + omega[2] * g[2])
        }
        Scheme::Cweno => {
            let g = substencil_fluxes(w);
            let gc = central_flux(w);
            let omega = cweno_weights(
                smoothness_indicators(w),
                central_smoothness(w),
                spec.epsilon,
            );
            Ok(omega[0] * g[0] + omega[1] * g[1] + omega[2] * g[2] + omega[3] * gc)
        }
    }
}

// Error-free transformations (Knuth/Dekker). The second-derivative assembly
// divides half-point flux differences by dx^2, which amplifies flux rounding
// by 1/dx^2 and would floor the achievable accuracy near 1e-12 on fine
// grids; the node kernel below therefore carries compensation terms.

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn two_diff(a: f64, b: f64) -> (f64, f64) {
    let s = a - b;
    let bb = s - a;
    let err = (a - (s - bb)) - (b + bb);
    (s, err)
}

/// Combined coefficients of the full-stencil flux difference
/// `g^FD_{j+1/2} - g^FD_{j-1/2}` on the symmetric pairs
/// `(u_{j-k} - u_j) + (u_{j+k} - u_j)`, k = 1, 2, 3.
const FD6_PAIR_COEFFS: [f64; 3] = [3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0];

/// Full-stencil second-difference numerator at extended index `j`, equal to
/// `g^FD_{j+1/2} - g^FD_{j-1/2}` in exact arithmetic, evaluated with
/// compensated symmetric pair sums.
#[inline]
fn fd6_node_difference(extended: &[f64], j: usize) -> f64 {
    let uj = extended[j];
    let mut hi = 0.0;
    let mut lo = 0.0;
    for k in 1..=3 {
        let (v_minus, e1) = two_diff(extended[j - k], uj);
        let (v_plus, e2) = two_diff(extended[j + k], uj);
        let (pair, e3) = two_sum(v_minus, v_plus);
        let c = FD6_PAIR_COEFFS[k - 1];
        let (acc, e4) = two_sum(hi, c * pair);
        hi = acc;
        lo += c * (e1 + e2 + e3) + e4;
    }
    hi + lo
}

/// Deviation of the scheme's half-point flux from the full-stencil flux:
/// `sum_k (w_k - lin_k) (g^k - g^FD)` with `lin` the linear weights. The
/// weights sum to one, so this regrouping is the WENO flux minus the FD6
/// flux in exact arithmetic while avoiding the cancellation of forming both
/// fluxes at full magnitude. Zero for FD6; NaN on a degenerate WENO-LSZ
/// normalization (caught by blow-up detection upstream).
#[inline]
fn flux_correction(w: &StencilWindow, spec: &SchemeSpec) -> f64 {
    match spec.kind {
        Scheme::Fd6 => 0.0,
        Scheme::WenoLsz => {
            let g = substencil_fluxes(w);
            let full = fd_flux(w);
            match lsz_weights(smoothness_indicators(w), spec.epsilon) {
                Ok(omega) => {
                    (omega[0] - LINEAR_D[0]) * (g[0] - full)
                        + (omega[1] - LINEAR_D[1]) * (g[1] - full)
                        + (omega[2] - LINEAR_D[2]) * (g[2] - full)
                }
                Err(_) => f64::NAN,
            }
        }
        Scheme::Mweno => {
            let g = substencil_fluxes(w);
            let full = fd_flux(w);
            let omega = mweno_weights(smoothness_indicators(w), spec.epsilon);
            (omega[0] - LINEAR_D[0]) * (g[0] - full)
                + (omega[1] - LINEAR_D[1]) * (g[1] - full)
                + (omega[2] - LINEAR_D[2]) * (g[2] - full)
        }
        Scheme::Cweno => {
            let g = substencil_fluxes(w);
            let gc = central_flux(w);
            let full = fd_flux(w);
            let omega = cweno_weights(
                smoothness_indicators(w),
                central_smoothness(w),
                spec.epsilon,
            );
            (omega[0] - THETA[0]) * (g[0] - full)
                + (omega[1] - THETA[1]) * (g[1] - full)
                + (omega[2] - THETA[2]) * (g[2] - full)
                + (omega[3] - THETA[3]) * (gc - full)
        }
    }
}

/// Second derivative at every node of the ghost-extended array, scaled by
/// `scale` (the caller passes `D / dx^2`). `corr` is reusable scratch.
/// `out` must hold `extended.len() - 6` values.
pub fn second_derivative_scaled_into(
    extended: &[f64],
    scale: f64,
    spec: &SchemeSpec,
    corr: &mut Vec<f64>,
    out: &mut [f64],
) {
    let n_points = extended.len() - 6;
    debug_assert_eq!(out.len(), n_points);
    if spec.kind == Scheme::Fd6 {
        for (i, o) in out.iter_mut().enumerate() {
            *o = scale * fd6_node_difference(extended, i + 3);
        }
        return;
    }
    corr.clear();
    corr.reserve(n_points + 1);
    for w in extended.windows(6) {
        let w: &StencilWindow = w.try_into().unwrap();
        corr.push(flux_correction(w, spec));
    }
    for (i, o) in out.iter_mut().enumerate() {
        *o = scale * (fd6_node_difference(extended, i + 3) + (corr[i + 1] - corr[i]));
    }
}

/// Flux at every half point covered by `extended`, one value per 6-point
/// window. `out` is resized to `extended.len() - 5`. A degenerate WENO-LSZ
/// normalization yields NaN here and is caught by blow-up detection upstream.
///
/// This is the reference flux sweep; [`second_derivative_scaled_into`]
/// evaluates the same flux difference in a compensated grouping.
pub fn half_point_fluxes_into(extended: &[f64], spec: &SchemeSpec, out: &mut Vec<f64>) {
    let n = extended.len() - 5;
    out.clear();
    out.reserve(n);
    let eps = spec.epsilon;
    match spec.kind {
        Scheme::Fd6 => {
            for w in extended.windows(6) {
                let w: &StencilWindow = w.try_into().unwrap();
                out.push(fd_flux(w));
            }
        }
        Scheme::WenoLsz => {
            for w in extended.windows(6) {
                let w: &StencilWindow = w.try_into().unwrap();
                let g = substencil_fluxes(w);
                let flux = match lsz_weights(smoothness_indicators(w), eps) {
                    Ok(omega) => omega[0] * g[0] + omega[1] * g[1] + omega[2] * g[2],
                    Err(_) => f64::NAN,
                };
                out.push(flux);
            }
        }
        Scheme::Mweno => {
            for w in extended.windows(6) {
                let w: &StencilWindow = w.try_into().unwrap();
                let g = substencil_fluxes(w);
                let omega = mweno_weights(smoothness_indicators(w), eps);
                out.push(omega[0] * g[0] + omega[1] * g[1] + omega[2] * g[2]);
            }
        }
        Scheme::Cweno => {
            for w in extended.windows(6) {
                let w: &StencilWindow = w.try_into().unwrap();
                let g = substencil_fluxes(w);
                let gc = central_flux(w);
                let omega = cweno_weights(smoothness_indicators(w), central_smoothness(w), eps);
                out.push(omega[0] * g[0] + omega[1] * g[1] + omega[2] * g[2] + omega[3] * gc);
            }
        }
    }
}

/// Second derivative at every node from a ghost-extended sample array of
/// length `points + 6`: `out[i] = (g_{i+1/2} - g_{i-1/2}) / dx^2`.
pub fn second_derivative_extended(extended: &[f64], dx: f64, spec: &SchemeSpec) -> Vec<f64> {
    let mut corr = Vec::new();
    let mut out = vec![0.0; extended.len() - 6];
    second_derivative_scaled_into(extended, 1.0 / (dx * dx), spec, &mut corr, &mut out);
    out
}

/// Second derivative of every species with constant ghost extension from the
/// Dirichlet values. Boundary entries are zeroed: the endpoints are pinned
/// and never integrated.
pub fn second_derivative(
    field: &crate::grid::StateField,
    grid: &crate::grid::Grid,
    bc: &crate::grid::BoundarySpec,
    spec: &SchemeSpec,
) -> Result<crate::grid::StateField, SolverError> {
    if field.points() != grid.points() {
        return Err(SolverError::ShapeMismatch {
            context: "second derivative nodes",
            expected: grid.points(),
            actual: field.points(),
        });
    }
    let extended = crate::grid::extend_with_ghosts(field, bc, crate::grid::GHOST_WIDTH)?;
    let mut result = crate::grid::StateField::zeros(field.species_count(), field.points());
    let n = field.points();
    for (s, ext) in extended.iter().enumerate() {
        let values = second_derivative_extended(ext, grid.dx(), spec);
        let out = result.species_mut(s);
        out[1..n - 1].copy_from_slice(&values[1..n - 1]);
        out[0] = 0.0;
        out[n - 1] = 0.0;
    }
    Ok(result)
}
