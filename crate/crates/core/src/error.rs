use thiserror::Error;

/// Errors produced by grid construction, kernels, and diagnostics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("invalid domain: need b > a and n_cells >= 6, got [{a}, {b}] with {n_cells} cells")]
    InvalidDomain { a: f64, b: f64, n_cells: usize },

    #[error("shape mismatch: {context} expected {expected}, got {actual}")]
    ShapeMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("degenerate weight normalization: mapped weights sum to zero")]
    DegenerateWeights,

    #[error("field never crosses level {level}")]
    NoCrossing { level: f64 },

    #[error("front speed needs at least {needed} samples, have {have}")]
    InsufficientSamples { needed: usize, have: usize },

    #[error("convergence order undefined: non-positive error at N = {n}")]
    UndefinedOrder { n: usize },

    #[error("step limit {max_steps} exceeded before reaching t = {t_final}")]
    StepLimitExceeded { max_steps: u64, t_final: f64 },
}
