//! Deterministic numerical integration.
//!
//! Four entry points:
//!
//! - [`integrate_semi_infinite`]: adaptive Gauss–Kronrod panels on `[a, T*]`
//!   where the truncation point `T*` comes from the caller's decay hint;
//! - [`integrate_oscillatory_bessel`]: partitions the axis at (approximate)
//!   Bessel zeros and Euler-accelerates the alternating partial integrals,
//!   which also sums the conditionally convergent undamped cases;
//! - [`integrate_2d`]: outer adaptive rule over inner semi-infinite sweeps;
//! - [`laplace_invert`]: fixed-Talbot deformation of the Bromwich contour.
//!
//! Everything is pure; results are independent of evaluation order.

mod kronrod;
mod oscillatory;
mod semi_infinite;
mod talbot;
mod two_dim;

pub use kronrod::adaptive_finite;
pub use oscillatory::integrate_oscillatory_bessel;
pub use semi_infinite::integrate_semi_infinite;
pub use talbot::laplace_invert;
pub use two_dim::{integrate_2d, Axis};

use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum QuadratureError {
    #[error("panel budget exhausted ({panels} panels, error estimate {err_estimate:e} for value {value:e})")]
    Convergence {
        value: f64,
        err_estimate: f64,
        panels: usize,
    },
    #[error("no truncation point satisfies the tail bound (reached T = {reached:e})")]
    Tail { reached: f64 },
    #[error("integrand evaluation failed: {0}")]
    Evaluation(String),
    #[error("invalid quadrature configuration: {0}")]
    InvalidSpec(String),
}

/// Tolerances and budgets for the integral evaluators.
#[derive(Debug, Clone)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    pub truncation_tail_bound: f64,
    pub talbot_nodes: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            max_panels: 2000,
            truncation_tail_bound: 1e-12,
            talbot_nodes: 48,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<(), QuadratureError> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(QuadratureError::InvalidSpec(
                "tolerances must be positive".into(),
            ));
        }
        if self.max_panels < 1 {
            return Err(QuadratureError::InvalidSpec("max_panels >= 1".into()));
        }
        if self.talbot_nodes < 8 || self.talbot_nodes % 2 != 0 {
            return Err(QuadratureError::InvalidSpec(
                "talbot_nodes must be even and >= 8".into(),
            ));
        }
        Ok(())
    }

    /// A copy with tolerances divided by `k` (used for inner integrals).
    pub(crate) fn tightened(&self, k: f64) -> QuadratureSpec {
        QuadratureSpec {
            rel_tol: self.rel_tol / k,
            abs_tol: self.abs_tol / k,
            ..self.clone()
        }
    }
}

/// How the integrand decays toward +infinity; drives truncation-point
/// selection and the tail contribution of the error estimate.
#[derive(Debug, Clone, Copy)]
pub enum DecayHint {
    /// |f| ~ C exp(-rate x)
    Exponential { rate: f64 },
    /// |f| ~ C exp(-coeff x^2)
    Gaussian { coeff: f64 },
    /// |f| ~ C x^{-exponent}, exponent > 1
    Algebraic { exponent: f64 },
}

impl DecayHint {
    /// Tail-mass estimate of the integral beyond `t` given |f(t)| = mag.
    pub(crate) fn tail_bound(&self, t: f64, mag: f64) -> f64 {
        match *self {
            DecayHint::Exponential { rate } => mag / rate.max(1e-300),
            DecayHint::Gaussian { coeff } => mag / (2.0 * coeff * t).max(1e-300),
            DecayHint::Algebraic { exponent } => {
                if exponent > 1.0 {
                    mag * t / (exponent - 1.0)
                } else {
                    f64::INFINITY
                }
            }
        }
    }
}

/// Result of a quadrature evaluation.
#[derive(Debug, Clone, Copy)]
pub struct IntegralEstimate {
    pub value: f64,
    pub err_estimate: f64,
    pub panels_used: usize,
    /// Upper integration limit actually used for semi-infinite integrands.
    pub truncated_at: f64,
}
