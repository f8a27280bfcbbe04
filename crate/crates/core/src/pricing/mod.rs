//! Bond-price evaluation (placeholder while the kernel is built).

pub use crate::models::ModelConstants;

/// Pricing method provenance (placeholder).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    CiIntegral,
}

#[derive(Debug, Clone)]
pub struct PriceEstimate {
    pub price: f64,
    pub err_estimate: f64,
    pub method: Method,
}
