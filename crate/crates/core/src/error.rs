use thiserror::Error;

/// Errors produced by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("adaptive step size underflow at t = {t} (h = {h:e})")]
    StepSizeUnderflow { t: f64, h: f64 },

    #[error("integrator exceeded {0} steps")]
    MaxStepsExceeded(usize),

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("truncated Floquet spectrum not converged: N vs N-4 discrepancy {discrepancy:e}")]
    NotConverged { discrepancy: f64 },

    #[error("small denominator: intermediate state {index} lies {gap:e} from the eigenvalue")]
    SmallDenominator { index: usize, gap: f64 },

    #[error("argument outside supported domain: {0}")]
    DomainExceeded(String),

    #[error("formula undefined here: {0}")]
    DomainError(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error(
        "predicted window width {predicted_width:e} is below three grid spacings ({spacing:e}); refine the resolution"
    )]
    ResolutionTooCoarse { predicted_width: f64, spacing: f64 },

    #[error("occupation is not growing (tail slope {slope:e})")]
    NotGrowing { slope: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
