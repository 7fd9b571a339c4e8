use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Evaluation requested within the guard band of a simple pole of `R`.
    #[error("u = {u} lies within {guard:e} of the diffusivity root {root}")]
    PoleAtRoot { u: f64, root: f64, guard: f64 },

    #[error("flux potential never attains the level {level} on [{lo}, {hi}]")]
    NoRoot { level: f64, lo: f64, hi: f64 },

    /// The lower shock endpoint is not positive.
    #[error("infeasible shock: lower endpoint u_l = {u_l} is not positive")]
    InfeasibleShock { u_l: f64 },

    #[error("{solver} failed to converge after {iterations} iterations, residuals {residuals:?}")]
    NoConvergence {
        solver: &'static str,
        iterations: usize,
        residuals: Vec<f64>,
    },

    #[error("no moving boundary exists at t = {t}")]
    NoBoundary { t: f64 },

    #[error("{family} family requires {requirement}")]
    FamilyMismatch {
        family: &'static str,
        requirement: &'static str,
    },

    #[error("{0}")]
    Domain(String),

    #[error("shock pair is inconsistent with the profile at x = {x}")]
    ShockMismatch { x: f64 },
}

impl Error {
    /// Solver failures, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NoConvergence { .. } | Error::InfeasibleShock { .. })
    }
}
