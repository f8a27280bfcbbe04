//! Fixed-Talbot numerical inversion of Laplace transforms.
//!
//! The Bromwich integral is deformed onto the Talbot contour
//! `s(theta) = r theta (cot theta + i)`, `theta in (-pi, pi)`, and evaluated
//! by the midpoint-type rule of the fixed-Talbot method. The contour scale is
//!
//!   r = max(2, 2 |leftmost singularity|) / t
//!
//! which keeps the contour's rightmost crossing clear of the image's branch
//! point; the error estimate comes from re-evaluating at twice the node
//! count.

use num_complex::Complex64;

use super::{IntegralEstimate, QuadratureError, QuadratureSpec};

fn talbot_sum<F>(
    f: &F,
    t: f64,
    r: f64,
    m: usize,
) -> Result<f64, QuadratureError>
where
    F: Fn(Complex64) -> Result<Complex64, String>,
{
    let fr = f(Complex64::new(r, 0.0)).map_err(QuadratureError::Evaluation)?;
    let mut acc = 0.5 * (r * t).exp() * fr.re;
    let mut max_mag = acc.abs();
    for k in 1..m {
        let theta = k as f64 * std::f64::consts::PI / m as f64;
        let cot = theta.cos() / theta.sin();
        let s = Complex64::new(r * theta * cot, r * theta);
        // Contributions die off as exp(t Re s); skip once they cannot move
        // the sum at double precision.
        let weight_ln = t * s.re;
        if weight_ln < max_mag.max(1e-280).ln() - 46.0 {
            break;
        }
        let nu = theta + (theta * cot - 1.0) * cot;
        let fv = f(s).map_err(QuadratureError::Evaluation)?;
        let term = ((t * s).exp() * fv * Complex64::new(1.0, nu)).re;
        acc += term;
        max_mag = max_mag.max(term.abs());
    }
    Ok(acc * r / m as f64)
}

/// Invert the Laplace image F at time t > 0.
///
/// `leftmost_singularity` is the magnitude of the leftmost real-axis
/// singularity or branch point of F (0.0 when only the origin matters); it
/// sets the contour scale. F may fail at a node, in which case the caller
/// can retry with a larger scale via `scale_boost`.
pub fn laplace_invert<F>(
    f: F,
    t: f64,
    spec: &QuadratureSpec,
    leftmost_singularity: f64,
    scale_boost: f64,
) -> Result<IntegralEstimate, QuadratureError>
where
    F: Fn(Complex64) -> Result<Complex64, String>,
{
    spec.validate()?;
    if !(t > 0.0) {
        return Err(QuadratureError::InvalidSpec(format!(
            "laplace_invert requires t > 0, got {t}"
        )));
    }
    let m = spec.talbot_nodes;
    let r = (2.0f64).max(2.0 * leftmost_singularity.abs()) * scale_boost.max(1.0) / t;
    let coarse = talbot_sum(&f, t, r, m)?;
    let fine = talbot_sum(&f, t, r, 2 * m)?;
    let err = (coarse - fine).abs();
    Ok(IntegralEstimate {
        value: fine,
        err_estimate: err.max(fine.abs() * 1e-13),
        panels_used: 3 * m,
        truncated_at: r,
    })
}
