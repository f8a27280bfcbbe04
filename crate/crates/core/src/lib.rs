//! Closed-form zero-coupon bond pricing for short-rate models that share the
//! Whittaker-equation structure: Constantinides–Ingersoll (and its CIR-VR
//! special case), geometric Brownian motion, geometric CIR, the original CIR
//! model, and a modified Constantinides–Ingersoll model.
//!
//! The crate is organised in layers:
//!
//! - [`specialfn`] — self-contained special functions: Gamma (real and
//!   complex), Bessel `J`/`I`/`K` (real, imaginary and complex order), the
//!   Kummer confluent hypergeometric function, Whittaker `M` and `W`,
//!   generalized Laguerre polynomials and error functions.
//! - [`quadrature`] — adaptive Gauss–Kronrod rules for semi-infinite smooth
//!   and Bessel-oscillatory integrands, tensor-product 2-D integration, and a
//!   fixed-Talbot numerical inverse Laplace transform.
//! - [`models`] — the model catalog: parameter containers, validation, the
//!   derived Whittaker/Bessel constants and drift/diffusion callbacks.
//! - [`pricing`] — the closed-form bond-price evaluators, each backed by at
//!   least two independent representations or an oracle route.
//! - [`oracles`] — independent verification: Monte Carlo SDE simulation,
//!   Crank–Nicolson PDE solving, and a Riccati ODE pricer for the affine CIR
//!   case.

pub mod models;
pub mod oracles;
pub mod pricing;
pub mod quadrature;
pub mod specialfn;

pub use models::{ModelConstants, PricingQuery, ShortRateModel};
pub use pricing::{Method, PriceEstimate};
