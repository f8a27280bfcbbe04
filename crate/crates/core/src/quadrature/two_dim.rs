//! Tensor-product integration over products of semi-infinite intervals:
//! an adaptive outer rule whose integrand is an inner semi-infinite sweep.

use std::cell::Cell;

use super::kronrod::adaptive_finite;
use super::semi_infinite::{integrate_semi_infinite, truncation_point};
use super::{DecayHint, IntegralEstimate, QuadratureError, QuadratureSpec};

/// One axis of a 2-D domain: lower endpoint and decay hint toward infinity.
#[derive(Debug, Clone, Copy)]
pub struct Axis {
    pub start: f64,
    pub hint: DecayHint,
}

/// Integrate f(outer, inner) over the product of two semi-infinite axes.
/// The error estimate is the outer rule's estimate plus the worst inner
/// error seen.
pub fn integrate_2d(
    f: impl Fn(f64, f64) -> f64,
    outer: Axis,
    inner: Axis,
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate, QuadratureError> {
    spec.validate()?;
    let inner_spec = spec.tightened(32.0);
    let worst_inner_err = Cell::new(0.0f64);
    let inner_panels = Cell::new(0usize);
    let failed = Cell::new(false);
    let g = |x: f64| -> f64 {
        if failed.get() {
            return 0.0;
        }
        match integrate_semi_infinite(|y| f(x, y), inner.start, inner.hint, &inner_spec) {
            Ok(est) => {
                if est.err_estimate > worst_inner_err.get() {
                    worst_inner_err.set(est.err_estimate);
                }
                inner_panels.set(inner_panels.get() + est.panels_used);
                est.value
            }
            Err(_) => {
                failed.set(true);
                0.0
            }
        }
    };
    // Truncation of the outer axis uses the inner-swept magnitude.
    let t_star = truncation_point(&g, outer.start, outer.hint, spec)?;
    if failed.get() {
        return Err(QuadratureError::Evaluation(
            "inner integral failed during outer sweep".into(),
        ));
    }
    let tail = outer.hint.tail_bound(t_star, g(t_star).abs());
    let initial = (((t_star - outer.start) / 3.0).ceil() as usize).clamp(4, 32);
    let outer_spec = QuadratureSpec {
        max_panels: spec.max_panels.min(400),
        ..spec.clone()
    };
    let (value, outer_err, outer_panels) =
        adaptive_finite(&g, outer.start, t_star, initial, &outer_spec)?;
    if failed.get() {
        return Err(QuadratureError::Evaluation(
            "inner integral failed during outer adaptive pass".into(),
        ));
    }
    Ok(IntegralEstimate {
        value,
        err_estimate: outer_err + tail + worst_inner_err.get() * (t_star - outer.start),
        panels_used: outer_panels + inner_panels.get(),
        truncated_at: t_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separable_exponential() {
        let spec = QuadratureSpec::default();
        let r = integrate_2d(
            |x, y| (-x - y).exp(),
            Axis {
                start: 0.0,
                hint: DecayHint::Exponential { rate: 1.0 },
            },
            Axis {
                start: 0.0,
                hint: DecayHint::Exponential { rate: 1.0 },
            },
            &spec,
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn shifted_domain() {
        // int_1^inf int_1^inf e^{-x-y} = e^{-2}
        let spec = QuadratureSpec::default();
        let r = integrate_2d(
            |x, y| (-x - y).exp(),
            Axis {
                start: 1.0,
                hint: DecayHint::Exponential { rate: 1.0 },
            },
            Axis {
                start: 1.0,
                hint: DecayHint::Exponential { rate: 1.0 },
            },
            &spec,
        )
        .unwrap();
        let expected = (-2.0f64).exp();
        assert!((r.value - expected).abs() < 1e-10 * expected);
    }

    #[test]
    fn gaussian_times_exponential() {
        // int_0^inf int_0^inf e^{-x^2 - y} dx dy = sqrt(pi)/2
        let spec = QuadratureSpec::default();
        let r = integrate_2d(
            |x, y| (-x * x - y).exp(),
            Axis {
                start: 0.0,
                hint: DecayHint::Gaussian { coeff: 1.0 },
            },
            Axis {
                start: 0.0,
                hint: DecayHint::Exponential { rate: 1.0 },
            },
            &spec,
        )
        .unwrap();
        let expected = 0.5 * std::f64::consts::PI.sqrt();
        assert!((r.value - expected).abs() < 1e-9 * expected);
    }
}
