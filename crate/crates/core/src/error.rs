use thiserror::Error;

/// Errors raised by the geometric and numerical routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter selects the wrong regime for the requested quantity.
    #[error("regime error: {0}")]
    Regime(String),

    /// Two inputs coincide where distinct values are required.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// An iterative method stopped before meeting its tolerance.
    #[error("accuracy not reached: best estimate {best} with error estimate {error_estimate}")]
    Accuracy { best: f64, error_estimate: f64 },

    /// A bracketing search found no sign change on the interval.
    #[error("no sign change on [{lo}, {hi}] (f(lo) = {f_lo}, f(hi) = {f_hi})")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// Sampled field values and operator grid do not line up.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A structural property that must hold was observed to fail.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {x}")))
    }
}

pub(crate) fn ensure_dimension(n: usize) -> Result<()> {
    if n >= 2 {
        Ok(())
    } else {
        Err(Error::Domain(format!("dimension n must be at least 2, got {n}")))
    }
}
