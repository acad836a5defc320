use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at s = {at}")]
    Pole { at: Complex64 },

    #[error("{what} = {value} outside supported range {range}")]
    Range { what: &'static str, value: i64, range: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape mismatch: expected {expected} values, got {got}")]
    Shape { expected: usize, got: usize },

    #[error("empty spectrum: {0}")]
    Degenerate(String),

    #[error("no convergence: {what} (error estimate {estimate:e}, budget {budget})")]
    Convergence { what: &'static str, estimate: f64, budget: usize },

    #[error("invalid asymptotic descriptor: {0}")]
    Descriptor(String),

    #[error("ill-conditioned fit (condition number {condition:e})")]
    IllConditioned { condition: f64 },

    #[error("vanishing denominator: {factor} at s = {at}")]
    ZeroDenominator { factor: &'static str, at: Complex64 },

    #[error("residual reached the noise floor at n = {n} (|residual| = {residual:e}, floor {floor:e})")]
    SignalLost { n: usize, residual: f64, floor: f64 },

    #[error("scan step too coarse near t = {t}")]
    StepTooCoarse { t: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Errors caused by the caller asking for something outside the
    /// domain of a function, as opposed to numerical failure.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. }
                | Error::Range { .. }
                | Error::Domain(_)
                | Error::Shape { .. }
                | Error::Degenerate(_)
                | Error::Descriptor(_)
                | Error::ZeroDenominator { .. }
        )
    }
}
