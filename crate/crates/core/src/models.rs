//! Model catalog: the six short-rate parameterizations, their validation,
//! the derived Whittaker/Bessel constants, and the drift/diffusion
//! callbacks the simulation and PDE oracles consume.
//!
//! SDE conventions (all coefficients per year, tau in years):
//!
//!   CI          dr = alpha r^2 dt + beta r^{3/2} dW
//!   CIR-VR      dr =                beta r^{3/2} dW          (CI, alpha = 0)
//!   GBM         dr = alpha r   dt + beta r       dW
//!   GCIR        dr = (alpha r^2 + gamma r) dt + beta r^{3/2} dW
//!   CIR         dr = (alpha r + gamma)    dt + beta r^{1/2}  dW
//!   ModifiedCI  dr = alpha r^2 dt + beta r       dW

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("invalid model parameters: {0}")]
    Validation(String),
}

/// The six supported short-rate models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum ShortRateModel {
    Ci { alpha: f64, beta: f64 },
    CirVr { beta: f64 },
    Gbm { alpha: f64, beta: f64 },
    Gcir { alpha: f64, beta: f64, gamma: f64 },
    Cir { alpha: f64, beta: f64, gamma: f64 },
    #[serde(rename = "modci")]
    ModifiedCi { alpha: f64, beta: f64 },
}

/// Derived constants shared by the Whittaker-family pricers.
///
/// For CI/GBM/GCIR: lambda = alpha/beta^2 - 1,
/// mu = sqrt(1/4 + 2/beta^2 + alpha^2/beta^4 - alpha/beta^2),
/// sigma = 2 sqrt(2)/beta. For CIR: sigma_cir = 1/sqrt(alpha^2 + 2 beta^2)
/// and mu_cir = gamma/beta^2 - 1/2. The eta-dependent indices (nu for GBM,
/// lambda-tilde for GCIR/CIR) are produced by closures over these values,
/// not stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelConstants {
    pub lambda: f64,
    pub mu: f64,
    pub sigma: f64,
    /// 1/sqrt(alpha^2 + 2 beta^2); CIR only.
    pub sigma_cir: Option<f64>,
    /// gamma/beta^2 - 1/2; CIR only. Whittaker-index use needs gamma > 0.
    pub mu_cir: Option<f64>,
}

/// Spot-rate / time-to-maturity pair for a pricing request.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PricingQuery {
    /// Spot short rate, 1/year.
    pub r: f64,
    /// Time to maturity T - t, years.
    pub tau: f64,
}

impl PricingQuery {
    pub fn new(r: f64, tau: f64) -> Result<Self, ModelError> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(ModelError::Validation(format!(
                "spot rate must be finite and >= 0, got {r}"
            )));
        }
        if !(tau >= 0.0) || !tau.is_finite() {
            return Err(ModelError::Validation(format!(
                "time to maturity must be finite and >= 0, got {tau}"
            )));
        }
        Ok(PricingQuery { r, tau })
    }
}

impl ShortRateModel {
    pub fn name(&self) -> &'static str {
        match self {
            ShortRateModel::Ci { .. } => "ci",
            ShortRateModel::CirVr { .. } => "cirvr",
            ShortRateModel::Gbm { .. } => "gbm",
            ShortRateModel::Gcir { .. } => "gcir",
            ShortRateModel::Cir { .. } => "cir",
            ShortRateModel::ModifiedCi { .. } => "modci",
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let beta = match *self {
            ShortRateModel::Ci { beta, .. }
            | ShortRateModel::CirVr { beta }
            | ShortRateModel::Gbm { beta, .. }
            | ShortRateModel::Gcir { beta, .. }
            | ShortRateModel::Cir { beta, .. }
            | ShortRateModel::ModifiedCi { beta, .. } => beta,
        };
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(ModelError::Validation(format!(
                "beta must be finite and > 0, got {beta}"
            )));
        }
        match *self {
            ShortRateModel::Gcir { gamma, .. } => {
                if !(gamma > 0.0) {
                    return Err(ModelError::Validation(format!(
                        "GCIR requires gamma > 0, got {gamma}"
                    )));
                }
            }
            ShortRateModel::Cir { gamma, .. } => {
                if !(gamma >= 0.0) {
                    return Err(ModelError::Validation(format!(
                        "CIR requires gamma >= 0, got {gamma}"
                    )));
                }
            }
            ShortRateModel::ModifiedCi { alpha, .. } => {
                if !(alpha > 0.0) {
                    return Err(ModelError::Validation(format!(
                        "modified CI requires alpha > 0, got {alpha}"
                    )));
                }
            }
            _ => {}
        }
        let alpha = match *self {
            ShortRateModel::Ci { alpha, .. }
            | ShortRateModel::Gbm { alpha, .. }
            | ShortRateModel::Gcir { alpha, .. }
            | ShortRateModel::Cir { alpha, .. }
            | ShortRateModel::ModifiedCi { alpha, .. } => alpha,
            ShortRateModel::CirVr { .. } => 0.0,
        };
        if !alpha.is_finite() {
            return Err(ModelError::Validation("alpha must be finite".into()));
        }
        Ok(())
    }

    /// Drift and diffusion (a(r), b(r)) of dr = a dt + b dW. Negative r is
    /// clamped to zero everywhere (full-truncation convention for the
    /// simulation oracle).
    pub fn drift_diffusion(&self, r: f64) -> (f64, f64) {
        let r = r.max(0.0);
        match *self {
            ShortRateModel::Ci { alpha, beta } => (alpha * r * r, beta * r.powf(1.5)),
            ShortRateModel::CirVr { beta } => (0.0, beta * r.powf(1.5)),
            ShortRateModel::Gbm { alpha, beta } => (alpha * r, beta * r),
            ShortRateModel::Gcir { alpha, beta, gamma } => {
                (alpha * r * r + gamma * r, beta * r.powf(1.5))
            }
            ShortRateModel::Cir { alpha, beta, gamma } => (alpha * r + gamma, beta * r.sqrt()),
            ShortRateModel::ModifiedCi { alpha, beta } => (alpha * r * r, beta * r),
        }
    }
}

/// Derive the Whittaker/Bessel constants for a validated model.
pub fn derive_constants(model: &ShortRateModel) -> Result<ModelConstants, ModelError> {
    model.validate()?;
    let whittaker = |alpha: f64, beta: f64| {
        let b2 = beta * beta;
        let lambda = alpha / b2 - 1.0;
        // mu^2 = (lambda + 1/2)^2 + 2/beta^2, evaluated in the paper's
        // expanded form.
        let mu = (0.25 + 2.0 / b2 + alpha * alpha / (b2 * b2) - alpha / b2).sqrt();
        let sigma = 2.0 * std::f64::consts::SQRT_2 / beta;
        (lambda, mu, sigma)
    };
    Ok(match *model {
        ShortRateModel::Ci { alpha, beta } | ShortRateModel::Gcir { alpha, beta, .. } => {
            let (lambda, mu, sigma) = whittaker(alpha, beta);
            ModelConstants {
                lambda,
                mu,
                sigma,
                sigma_cir: None,
                mu_cir: None,
            }
        }
        ShortRateModel::CirVr { beta } => {
            let (lambda, mu, sigma) = whittaker(0.0, beta);
            ModelConstants {
                lambda,
                mu,
                sigma,
                sigma_cir: None,
                mu_cir: None,
            }
        }
        ShortRateModel::Gbm { alpha, beta } => {
            let (lambda, mu, sigma) = whittaker(alpha, beta);
            ModelConstants {
                lambda,
                mu,
                sigma,
                sigma_cir: None,
                mu_cir: None,
            }
        }
        ShortRateModel::Cir { alpha, beta, gamma } => {
            let (lambda, mu, sigma) = whittaker(alpha, beta);
            ModelConstants {
                lambda,
                mu,
                sigma,
                sigma_cir: Some(1.0 / (alpha * alpha + 2.0 * beta * beta).sqrt()),
                mu_cir: Some(gamma / (beta * beta) - 0.5),
            }
        }
        ShortRateModel::ModifiedCi { alpha, beta } => {
            let (lambda, mu, sigma) = whittaker(alpha, beta);
            ModelConstants {
                lambda,
                mu,
                sigma,
                sigma_cir: None,
                mu_cir: None,
            }
        }
    })
}

/// The GCIR effective time-rate product
/// x(r, tau) = r (1 - e^{-gamma tau}) / (gamma e^{-gamma tau})
///           = r (e^{gamma tau} - 1) / gamma,
/// with the three-term Taylor expansion below gamma*tau = 1e-6 to avoid the
/// 0/0 cancellation; the gamma -> 0 limit is r*tau.
pub fn gcir_time_change(gamma: f64, r: f64, tau: f64) -> f64 {
    let g = gamma * tau;
    if g.abs() < 1e-6 {
        return r * tau * (1.0 + g / 2.0 + g * g / 6.0);
    }
    r * (g.exp() - 1.0) / gamma
}
