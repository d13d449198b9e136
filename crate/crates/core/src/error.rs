use thiserror::Error;

/// Failures raised by the model, solver and analysis layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("step size must be positive, got dt = {0}")]
    NonPositiveStep(f64),

    #[error("accuracy guard: dt = {dt} exceeds delay/10 = {limit} (delay T = {delay})")]
    AccuracyGuard { dt: f64, delay: f64, limit: f64 },

    #[error("step-size guard: dt = {dt} exceeds {limit} for hopping J = {hopping}")]
    StepSizeGuard { dt: f64, hopping: f64, limit: f64 },

    #[error("non-finite value encountered at t = {0} (integration diverged)")]
    NonFinite(f64),

    #[error(
        "causal padding violated: {padding} sites between atoms and chain ends, \
         need at least {required} for t_max = {t_max}"
    )]
    CausalPadding { padding: usize, required: f64, t_max: f64 },

    #[error("time {t} outside stored range [{start}, {end}]")]
    OutOfRange { t: f64, start: f64, end: f64 },

    #[error("root polishing did not converge after {iterations} Newton steps (branch {branch})")]
    NonConvergence { branch: i64, iterations: usize },

    #[error("eigenvector matrix is ill-conditioned (condition estimate {condition:.3e}); matrix treated as defective")]
    Defective { condition: f64 },

    #[error("non-positive population {value} at t = {t}; logarithm undefined")]
    NonPositivePopulation { t: f64, value: f64 },

    #[error("fit window [{start}, {end}] holds {count} samples, need at least {required}")]
    InsufficientSamples { start: f64, end: f64, count: usize, required: usize },

    #[error("wave packet reaches the lattice edge at t = {0}")]
    EdgeReached(f64),

    #[error("eigendecomposition failed: {0}")]
    Decomposition(&'static str),

    #[error("empty input: {0}")]
    Empty(&'static str),
}

impl Error {
    /// True for errors raised by a numerical guard rather than by bad input.
    pub fn is_numerical_guard(&self) -> bool {
        matches!(
            self,
            Error::AccuracyGuard { .. }
                | Error::StepSizeGuard { .. }
                | Error::NonFinite(_)
                | Error::CausalPadding { .. }
                | Error::NonConvergence { .. }
                | Error::Defective { .. }
                | Error::Decomposition(_)
                | Error::NonPositivePopulation { .. }
                | Error::EdgeReached(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
