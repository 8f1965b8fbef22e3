use num_complex::Complex64;
use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{name} = {got} exceeds the configured cap {cap}")]
    CapExceeded {
        name: &'static str,
        got: u32,
        cap: u32,
    },

    #[error("evaluation at a pole (s = {0})")]
    Pole(Complex64),

    #[error("accuracy target {target:e} not reached (estimated error {achieved:e}); partial value {value}")]
    Accuracy {
        target: f64,
        achieved: f64,
        value: Complex64,
    },

    #[error("series inversion needs a nonzero constant leading coefficient")]
    ZeroLeadingCoeff,

    #[error("Laurent truncation too short: needed order {needed}, tracked {tracked}")]
    Truncation { needed: i32, tracked: i32 },

    #[error("Fourier coefficients do not decay (fitted growth exponent A = {a:.3} >= 1)")]
    NonDecaying { a: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
