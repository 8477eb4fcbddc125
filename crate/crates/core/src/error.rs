use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} is outside its domain: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),

    #[error("quadrature did not converge: error estimate {error:e} exceeds tolerance {tolerance:e}")]
    Convergence { error: f64, tolerance: f64 },

    #[error("localized-mode root refinement failed: |F| = {residual:e} after {iterations} iterations")]
    RootRefinement { residual: f64, iterations: usize },

    #[error("localized-mode root could not be bracketed")]
    RootBracketing,

    #[error("solver instability at step {step}: |u| = {magnitude}")]
    Instability { step: usize, magnitude: f64 },

    #[error("non-negligible imaginary residue {residue:e} in v at step {step}")]
    ImaginaryResidue { step: usize, residue: f64 },

    #[error("spectrum evaluated at the localized-mode frequency {0}")]
    SingularPoint(f64),

    #[error("power-law fit needs at least {required} samples in range, found {found}")]
    InsufficientSamples { required: usize, found: usize },

    #[error("non-positive spectrum sample {value} at index {index}")]
    NonPositiveSample { index: usize, value: f64 },

    #[error("time {time} outside solved range [{start}, {end}]")]
    OutOfRange { time: f64, start: f64, end: f64 },

    #[error("master-equation coefficient undefined at sample {0}")]
    UndefinedCoefficient(usize),

    #[error("trace drifted by {0:e}")]
    TraceDrift(f64),

    #[error("population {0:e} leaked into the top Fock levels")]
    Leakage(f64),

    #[error("series lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
}
