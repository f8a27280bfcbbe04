//! Special functions backing the bond-price formulas.
//!
//! Everything here is self-contained: Gamma for real and complex argument,
//! Bessel `J`/`I`/`K` (including imaginary and complex order), the Kummer
//! confluent hypergeometric function, Whittaker `M` and `W`, generalized
//! Laguerre polynomials, and the error functions. All operations are pure and
//! reentrant; there is no global state.
//!
//! Each evaluation returns an [`FnResult`] carrying the value, an estimated
//! absolute error, and the number of series terms (or quadrature nodes) used.

pub(crate) mod dd;

mod bessel;
mod bessel_complex;
mod erf;
mod gamma;
mod kummer;
mod laguerre;
mod whittaker;

pub use bessel::{bessel_i, bessel_i_log, bessel_j, bessel_k};
pub use bessel_complex::{
    bessel_i_complex_order, bessel_i_complex_order_ln, bessel_j_complex,
    bessel_k_complex_order_ln, bessel_k_imag, bessel_k_imag_scaled,
};
pub use erf::{erf, erfc};
pub use gamma::{gamma, gamma_real, ln_gamma, ln_gamma_real};
pub use kummer::kummer_m;
pub use laguerre::laguerre;
pub use whittaker::{whittaker_m, whittaker_m_log, whittaker_w, WhittakerIndex};

use num_complex::Complex64;
use thiserror::Error;

/// Distance to a nonpositive integer below which Gamma evaluation is refused.
pub const POLE_GUARD: f64 = 1e-8;
/// When `2*mu` is closer than this to an integer, the Whittaker `W`
/// Gamma-combination is abandoned for the direct integral representation.
pub const MU_INTEGER_GUARD: f64 = 1e-6;
/// Largest argument at which Bessel functions of genuinely complex order are
/// evaluated by their power series.
pub const SERIES_RADIUS: f64 = 40.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecialFnError {
    #[error("argument {arg} is within {guard} of a Gamma pole")]
    Pole { arg: f64, guard: f64 },
    #[error("result magnitude exceeds f64 range (log-magnitude {log_magnitude}); use the log-scaled variant")]
    Overflow { log_magnitude: f64 },
    #[error("argument outside the function domain: {0}")]
    Domain(String),
    #[error("series failed its tail bound after {terms} terms")]
    Convergence { terms: usize },
}

/// Value, error estimate and work counter for a special-function evaluation.
///
/// `value` is complex; functions that are real by construction keep the
/// imaginary part exactly zero and callers may use [`FnResult::re`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FnResult {
    pub value: Complex64,
    /// Estimated absolute error of `value`.
    pub abs_err: f64,
    /// Series terms or quadrature nodes consumed (always >= 1).
    pub terms_used: usize,
}

impl FnResult {
    pub(crate) fn real(value: f64, abs_err: f64, terms_used: usize) -> Self {
        FnResult {
            value: Complex64::new(value, 0.0),
            abs_err,
            terms_used: terms_used.max(1),
        }
    }

    pub(crate) fn complex(value: Complex64, abs_err: f64, terms_used: usize) -> Self {
        FnResult {
            value,
            abs_err,
            terms_used: terms_used.max(1),
        }
    }

    /// Real part of the value; the natural view for real-valued functions.
    pub fn re(&self) -> f64 {
        self.value.re
    }
}

pub(crate) fn check_finite(name: &str, v: Complex64) -> Result<(), SpecialFnError> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(())
    } else {
        Err(SpecialFnError::Domain(format!(
            "{name} requires finite components, got {v}"
        )))
    }
}
