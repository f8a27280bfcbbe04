//! Bessel-oscillatory integrals over (0, infinity).
//!
//! The axis is cut at McMahon first-order approximations of the J_nu zeros;
//! the partial integrals alternate in sign and are fed to an iterated-mean
//! (Euler) acceleration, which also sums the conditionally convergent
//! undamped cases such as the x^mu J_nu tabulated identities.

use super::kronrod::gk15;
use super::{IntegralEstimate, QuadratureError, QuadratureSpec};

/// McMahon first-order approximation of the k-th positive zero of J_nu.
pub(crate) fn mcmahon_zero(nu: f64, k: usize) -> f64 {
    let b = (k as f64 + 0.5 * nu - 0.25) * std::f64::consts::PI;
    let mu = 4.0 * nu * nu;
    b - (mu - 1.0) / (8.0 * b)
}

/// Iterated averaging of the partial-sum sequence; returns (limit, spread
/// of the last diagonal step) — the classic Euler transform of an
/// alternating series given its partial sums.
fn euler_accelerate(partials: &[f64]) -> (f64, f64) {
    let mut row: Vec<f64> = partials.to_vec();
    let mut best = *row.last().unwrap();
    let mut prev_best = best;
    while row.len() > 1 {
        for i in 0..row.len() - 1 {
            row[i] = 0.5 * (row[i] + row[i + 1]);
        }
        row.pop();
        prev_best = best;
        best = *row.last().unwrap();
    }
    (best, (best - prev_best).abs())
}

/// Integrate g(x) * J_nu(x)-style integrands where the oscillation is
/// carried by the Bessel factor: `f` is the FULL integrand (envelope times
/// Bessel), `nu` only locates the sign changes.
pub fn integrate_oscillatory_bessel(
    f: impl Fn(f64) -> f64,
    nu: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate, QuadratureError> {
    spec.validate()?;
    let max_segments = 80usize;
    let mut partials = Vec::with_capacity(max_segments);
    let mut sum = 0.0;
    let mut panel_err = 0.0;
    let mut panels = 0usize;
    let mut prev_cut = 0.0f64;
    let mut last_batch: f64 = f64::MAX;
    for k in 1..=max_segments {
        let cut = mcmahon_zero(nu, k);
        if cut <= prev_cut {
            prev_cut = cut;
            continue;
        }
        // Each inter-zero segment is half a period: two GK panels resolve it.
        let mid = 0.5 * (prev_cut + cut);
        let (v1, e1) = gk15(&f, prev_cut, mid);
        let (v2, e2) = gk15(&f, mid, cut);
        sum += v1 + v2;
        panel_err += e1 + e2;
        panels += 2;
        partials.push(sum);
        prev_cut = cut;
        // Early exit for strongly damped integrands.
        let batch = (v1 + v2).abs();
        if batch < spec.abs_tol * 1e-2 && last_batch < spec.abs_tol * 1e-2 && k > 8 {
            break;
        }
        last_batch = batch;
    }
    if partials.len() < 4 {
        let value = sum;
        return Ok(IntegralEstimate {
            value,
            err_estimate: panel_err,
            panels_used: panels,
            truncated_at: prev_cut,
        });
    }
    let (value, accel_err) = euler_accelerate(&partials);
    Ok(IntegralEstimate {
        value,
        err_estimate: accel_err + panel_err,
        panels_used: panels,
        truncated_at: prev_cut,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfn::bessel_j;

    #[test]
    fn mcmahon_matches_j0_zeros() {
        // First zeros of J_0: 2.404825557695773, 5.520078110286311
        assert!((mcmahon_zero(0.0, 1) - 2.404825557695773).abs() < 6e-3);
        assert!((mcmahon_zero(0.0, 2) - 5.520078110286311).abs() < 1e-3);
    }

    #[test]
    fn integral_of_j1_is_one() {
        // int_0^inf J_1(x) dx = 1, conditionally convergent.
        let spec = QuadratureSpec::default();
        let r = integrate_oscillatory_bessel(
            |x| bessel_j(1.0, x).map(|v| v.re()).unwrap_or(0.0),
            1.0,
            &spec,
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-8, "{} err={}", r.value, r.err_estimate);
        assert!(r.err_estimate >= (r.value - 1.0).abs());
    }

    #[test]
    fn damped_case_matches_semi_infinite() {
        use super::super::{integrate_semi_infinite, DecayHint};
        let spec = QuadratureSpec::default();
        let f = |x: f64| bessel_j(0.0, x).map(|v| v.re()).unwrap_or(0.0) * (-0.05 * x * x).exp();
        let a = integrate_oscillatory_bessel(&f, 0.0, &spec).unwrap();
        let b =
            integrate_semi_infinite(&f, 0.0, DecayHint::Gaussian { coeff: 0.05 }, &spec).unwrap();
        assert!(
            (a.value - b.value).abs() <= (a.err_estimate + b.err_estimate).max(1e-10),
            "{} vs {}",
            a.value,
            b.value
        );
    }
}
