//! Semi-infinite integration: decay-hint-driven truncation plus the
//! adaptive finite rule.

use super::kronrod::adaptive_finite;
use super::{DecayHint, IntegralEstimate, QuadratureError, QuadratureSpec};

/// Find T* such that the hinted tail bound beyond T* drops below the
/// spec's truncation_tail_bound. Samples |f| at a few phases past each
/// candidate so an oscillation zero cannot fake decay.
pub(crate) fn truncation_point(
    f: &impl Fn(f64) -> f64,
    start: f64,
    hint: DecayHint,
    spec: &QuadratureSpec,
) -> Result<f64, QuadratureError> {
    let mut t = match hint {
        DecayHint::Exponential { rate } => (start + 1.0).max(8.0 / rate.max(1e-8)),
        DecayHint::Gaussian { coeff } => (start + 1.0).max((8.0 / coeff.max(1e-12)).sqrt()),
        DecayHint::Algebraic { .. } => (start + 1.0).max(16.0),
    };
    for _ in 0..70 {
        let mag = f(t).abs().max(f(1.043 * t).abs()).max(f(1.217 * t).abs());
        if !mag.is_finite() {
            return Err(QuadratureError::Evaluation(format!(
                "integrand not finite near t = {t}"
            )));
        }
        if hint.tail_bound(t, mag) <= spec.truncation_tail_bound {
            return Ok(t * 1.05);
        }
        t *= 1.6;
        if !t.is_finite() {
            break;
        }
    }
    Err(QuadratureError::Tail { reached: t })
}

/// Integrate f over (start, infinity). The decay hint picks the truncation
/// point T*; the returned error estimate combines the panel error with the
/// hinted tail bound.
pub fn integrate_semi_infinite(
    f: impl Fn(f64) -> f64,
    start: f64,
    hint: DecayHint,
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate, QuadratureError> {
    spec.validate()?;
    let t_star = truncation_point(&f, start, hint, spec)?;
    let tail = hint.tail_bound(t_star, f(t_star).abs());
    // Enough seed panels that moderate oscillation cannot alias through the
    // first error estimates.
    let initial = (((t_star - start) / 3.0).ceil() as usize).clamp(4, 64);
    let (value, err, panels) = adaptive_finite(&f, start, t_star, initial, spec)?;
    Ok(IntegralEstimate {
        value,
        err_estimate: err + tail,
        panels_used: panels,
        truncated_at: t_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_unit_integral() {
        let spec = QuadratureSpec::default();
        let r = integrate_semi_infinite(
            |x| (-x).exp(),
            0.0,
            DecayHint::Exponential { rate: 1.0 },
            &spec,
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-12, "{}", r.value);
        assert!(r.err_estimate < 1e-9);
    }

    #[test]
    fn gaussian_moment() {
        // int_0^inf x e^{-x^2} dx = 1/2
        let spec = QuadratureSpec::default();
        let r = integrate_semi_infinite(
            |x| x * (-x * x).exp(),
            0.0,
            DecayHint::Gaussian { coeff: 1.0 },
            &spec,
        )
        .unwrap();
        assert!((r.value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn algebraic_tail() {
        // int_1^inf x^{-3} dx = 1/2
        let spec = QuadratureSpec::default();
        let r = integrate_semi_infinite(
            |x| x.powi(-3),
            1.0,
            DecayHint::Algebraic { exponent: 3.0 },
            &spec,
        )
        .unwrap();
        assert!((r.value - 0.5).abs() < 2e-9, "{}", r.value);
        assert!(r.err_estimate >= (r.value - 0.5).abs());
    }

    #[test]
    fn tail_error_when_no_decay() {
        let spec = QuadratureSpec::default();
        let r = integrate_semi_infinite(
            |_| 1.0,
            0.0,
            DecayHint::Algebraic { exponent: 0.5 },
            &spec,
        );
        assert!(matches!(r, Err(QuadratureError::Tail { .. })));
    }

    #[test]
    fn halving_tolerance_never_hurts() {
        // Monotone refinement on a closed form.
        let exact = 1.0;
        let mut last_err = f64::MAX;
        for k in 0..4 {
            let spec = QuadratureSpec {
                rel_tol: 1e-4 * (0.5f64).powi(k),
                abs_tol: 1e-300,
                ..Default::default()
            };
            let r = integrate_semi_infinite(
                |x| (-x).exp(),
                0.0,
                DecayHint::Exponential { rate: 1.0 },
                &spec,
            )
            .unwrap();
            let err = (r.value - exact).abs();
            assert!(err <= last_err.max(1e-13) * 1.000001);
            last_err = err.max(1e-15);
        }
    }
}
