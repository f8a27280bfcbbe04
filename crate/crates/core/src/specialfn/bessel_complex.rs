//! Bessel functions at imaginary and general complex order.
//!
//! The power series for `I` and `J` at complex order cancel by up to
//! `exp(2x - pi*theta/2)`; they are therefore summed in double-double
//! arithmetic with the starting phase `(x/2)^nu / Gamma(nu+1)` also carried
//! in dd (an f64-rounded phase would reintroduce the full cancellation
//! error). Where the series would still lose too much, `K` at imaginary
//! order falls back to the cosh-integral representation, which is accurate
//! precisely where the series is not:
//!
//! - series route: `2x - pi*theta/2 <= 46`;
//! - integral route: everywhere else (there `K` is within a few e-folds of
//!   `exp(-x)`, the integrand scale, so f64 suffices).
//!
//! The product `sinh(pi theta) K_{i theta}(x)` that the pricing integrands
//! need is returned directly as `-pi Im I_{i theta}(x)`, which never suffers
//! the `exp(-pi theta / 2)` underutilisation of the plain value.

use num_complex::Complex64;

use super::bessel::bessel_k;
use super::dd::{ln_gamma_cdd, Cdd, Dd};
use super::gamma::{ln_gamma, ln_sin_pi};
use super::{check_finite, FnResult, SpecialFnError, SERIES_RADIUS};

struct CSeries {
    sum: Cdd,
    max_term: f64,
    terms: usize,
}

/// sum_k t_k with t_0 given and t_{k+1} = t_k * q / ((k+1)(nu+k+1)).
fn series_cdd(t0: Cdd, q: Dd, nu: Complex64, sign: f64) -> Result<CSeries, SpecialFnError> {
    let mut term = t0;
    let mut sum = t0;
    let mut max_term = t0.norm_sqr().hi.sqrt();
    let mut streak = 0;
    for k in 0..700 {
        let kf = k as f64;
        let denom = Cdd::new(
            Dd::from_prod(kf + 1.0, nu.re + kf + 1.0),
            Dd::from_prod(kf + 1.0, nu.im),
        );
        term = term * Cdd::new(q * sign, Dd::ZERO) / denom;
        sum = sum + term;
        let mag = term.norm_sqr().hi.sqrt();
        max_term = max_term.max(mag);
        if mag < 1e-34 * sum.norm_sqr().hi.sqrt().max(1e-300) {
            streak += 1;
            if streak >= 3 {
                return Ok(CSeries {
                    sum,
                    max_term,
                    terms: k + 1,
                });
            }
        } else {
            streak = 0;
        }
    }
    Err(SpecialFnError::Convergence { terms: 700 })
}

/// I_{i theta}(x) in full dd precision (value, max term, terms used).
fn bessel_i_imag_order_dd(theta: f64, x: f64) -> Result<CSeries, SpecialFnError> {
    // t0 = (x/2)^{i theta} / Gamma(1 + i theta), phase carried in dd.
    let ln_half_x = Dd::from_f64(x / 2.0).ln();
    let ln_pref = Cdd::new(Dd::ZERO, ln_half_x * theta)
        - ln_gamma_cdd(Cdd::from_c64(Complex64::new(1.0, theta)));
    let t0 = ln_pref.exp();
    let q = Dd::from_prod(x / 2.0, x / 2.0);
    series_cdd(t0, q, Complex64::new(0.0, theta), 1.0)
}

/// Trapezoid sum for K_{i theta}(x) = int_0^inf e^{-x cosh t} cos(theta t) dt.
fn bessel_k_imag_integral(theta: f64, x: f64) -> Result<FnResult, SpecialFnError> {
    let f = |t: f64| (-x * t.cosh()).exp() * (theta * t).cos();
    let envelope = |t: f64| (-x * t.cosh()).exp();
    // Resolve the cos oscillation: a few nodes per period.
    let mut h = (0.25f64).min(1.5 / (1.0 + theta));
    let mut prev = f64::NAN;
    let mut nodes = 0;
    for _ in 0..7 {
        let mut sum = 0.5 * f(0.0);
        let mut env_scale: f64 = 1.0;
        let mut k = 1usize;
        loop {
            let t = k as f64 * h;
            sum += f(t);
            let e = envelope(t);
            env_scale = env_scale.max(e);
            if e < 1e-19 * env_scale && t > 1.0 {
                break;
            }
            k += 1;
            if k > 200_000 {
                return Err(SpecialFnError::Convergence { terms: k });
            }
        }
        nodes += k;
        let value = sum * h;
        if (value - prev).abs() <= 1e-14 * value.abs().max(1e-280) {
            return Ok(FnResult::real(
                value,
                (value - prev).abs().max(value.abs() * 1e-15) + 1e-300,
                nodes,
            ));
        }
        prev = value;
        h *= 0.5;
    }
    Ok(FnResult::real(prev, prev.abs() * 1e-11, nodes))
}

/// sinh(pi theta) * K_{i theta}(x), evaluated without the exponential
/// underflow of the two factors: equal to -pi * Im I_{i theta}(x).
pub fn bessel_k_imag_scaled(theta: f64, x: f64) -> Result<FnResult, SpecialFnError> {
    if x <= 0.0 {
        return Err(SpecialFnError::Domain(format!(
            "bessel_k_imag_scaled requires x > 0, got {x}"
        )));
    }
    if theta < 0.0 {
        return Err(SpecialFnError::Domain(format!(
            "theta must be nonnegative, got {theta}"
        )));
    }
    if theta < 1e-4 || 2.0 * x - std::f64::consts::FRAC_PI_2 * theta > 46.0 {
        let k = bessel_k_imag_integral(theta, x)?;
        let s = (std::f64::consts::PI * theta).sinh();
        return Ok(FnResult::real(k.re() * s, k.abs_err * s, k.terms_used));
    }
    let out = bessel_i_imag_order_dd(theta, x)?;
    let value = -std::f64::consts::PI * out.sum.im.to_f64();
    let err = std::f64::consts::PI * (out.max_term * 1e-30 + value.abs() * 1e-15) + 1e-300;
    Ok(FnResult::real(value, err, out.terms))
}

/// K at purely imaginary order i*theta; real-valued for real x > 0.
pub fn bessel_k_imag(theta: f64, x: f64) -> Result<FnResult, SpecialFnError> {
    if x <= 0.0 {
        return Err(SpecialFnError::Domain(format!(
            "bessel_k_imag requires x > 0, got {x}"
        )));
    }
    let theta = theta.abs();
    if theta < 1e-4 || 2.0 * x - std::f64::consts::FRAC_PI_2 * theta > 46.0 {
        return bessel_k_imag_integral(theta, x);
    }
    let scaled = bessel_k_imag_scaled(theta, x)?;
    let s = (std::f64::consts::PI * theta).sinh();
    Ok(FnResult::real(
        scaled.re() / s,
        scaled.abs_err / s,
        scaled.terms_used,
    ))
}

/// Bessel J at complex order (Re nu >= 0) by the dd power series;
/// restricted to x <= SERIES_RADIUS where the series cancellation stays
/// within the dd budget.
pub fn bessel_j_complex(nu: Complex64, x: f64) -> Result<FnResult, SpecialFnError> {
    check_finite("bessel_j_complex", nu)?;
    if x < 0.0 {
        return Err(SpecialFnError::Domain(format!(
            "bessel_j requires x >= 0, got {x}"
        )));
    }
    if nu.re < 0.0 {
        return Err(SpecialFnError::Domain(
            "complex-order bessel_j requires Re nu >= 0".into(),
        ));
    }
    if x > SERIES_RADIUS {
        return Err(SpecialFnError::Domain(format!(
            "complex-order bessel_j is limited to x <= {SERIES_RADIUS}, got {x}"
        )));
    }
    if x == 0.0 {
        let v = if nu == Complex64::new(0.0, 0.0) { 1.0 } else { 0.0 };
        return Ok(FnResult::real(v, 0.0, 1));
    }
    let ln_half_x = Dd::from_f64(x / 2.0).ln();
    let ln_pref = Cdd::new(ln_half_x * nu.re, ln_half_x * nu.im)
        - ln_gamma_cdd(Cdd::from_c64(nu + 1.0));
    let t0 = ln_pref.exp();
    let q = Dd::from_prod(x / 2.0, x / 2.0);
    let out = series_cdd(t0, q, nu, -1.0)?;
    let value = out.sum.to_c64();
    let err = out.max_term * 1e-30 + value.norm() * 1e-14;
    Ok(FnResult::complex(value, err, out.terms))
}

/// ln prefactor and dd series sum for I_nu(x) at general complex order.
fn bessel_i_parts(nu: Complex64, x: f64) -> Result<(Complex64, CSeries), SpecialFnError> {
    let ln_pref = nu * (x / 2.0).ln() - ln_gamma(nu + 1.0)?;
    let q = Dd::from_prod(x / 2.0, x / 2.0);
    let series = series_cdd(Cdd::ONE, q, nu, 1.0)?;
    Ok((ln_pref, series))
}

/// I at complex order, direct value.
pub fn bessel_i_complex_order(nu: Complex64, x: f64) -> Result<FnResult, SpecialFnError> {
    check_finite("bessel_i_complex_order", nu)?;
    if x < 0.0 {
        return Err(SpecialFnError::Domain(format!(
            "bessel_i requires x >= 0, got {x}"
        )));
    }
    if x == 0.0 {
        let v = if nu == Complex64::new(0.0, 0.0) { 1.0 } else { 0.0 };
        return Ok(FnResult::real(v, 0.0, 1));
    }
    let (ln_pref, series) = bessel_i_parts(nu, x)?;
    let sum = series.sum.to_c64();
    let ln_mag = ln_pref.re + sum.norm().ln();
    if ln_mag > 705.0 {
        return Err(SpecialFnError::Overflow {
            log_magnitude: ln_mag,
        });
    }
    let value = ln_pref.exp() * sum;
    let err = series.max_term * ln_pref.re.exp().min(f64::MAX) * 1e-28
        + value.norm() * 1e-13;
    Ok(FnResult::complex(value, err, series.terms))
}

/// ln I_nu(x) at complex order (principal branch of the series sum).
pub fn bessel_i_complex_order_ln(nu: Complex64, x: f64) -> Result<Complex64, SpecialFnError> {
    if x <= 0.0 {
        return Err(SpecialFnError::Domain(format!(
            "bessel_i_complex_order_ln requires x > 0, got {x}"
        )));
    }
    let (ln_pref, series) = bessel_i_parts(nu, x)?;
    Ok(ln_pref + series.sum.to_c64().ln())
}

/// ln K_nu(x) at complex order via the I-difference in log form:
/// K = pi (I_{-nu} - I_nu) / (2 sin(pi nu)).
///
/// Real orders (including integers) are routed to the real-order
/// implementation; complex orders near the real axis keep |sin(pi nu)|
/// away from zero whenever |Im nu| is not tiny, which the Laplace-image
/// contour guarantees for every node but the real one.
pub fn bessel_k_complex_order_ln(nu: Complex64, x: f64) -> Result<Complex64, SpecialFnError> {
    if x <= 0.0 {
        return Err(SpecialFnError::Domain(format!(
            "bessel_k_complex_order_ln requires x > 0, got {x}"
        )));
    }
    if nu.im == 0.0 {
        let k = bessel_k(nu.re, x)?;
        return Ok(Complex64::new(k.re().ln(), 0.0));
    }
    let (lp_pos, s_pos) = bessel_i_parts(nu, x)?;
    let (lp_neg, s_neg) = bessel_i_parts(-nu, x)?;
    let l_pos = lp_pos + s_pos.sum.to_c64().ln();
    let l_neg = lp_neg + s_neg.sum.to_c64().ln();
    // pi/(2 sin(pi nu)) in log form, overflow-free for large |Im nu|.
    let ln_sin = ln_sin_pi(nu);
    let ln_front = std::f64::consts::FRAC_PI_2.ln() - ln_sin;
    let value = if l_neg.re >= l_pos.re {
        ln_front + l_neg + (1.0 - (l_pos - l_neg).exp()).ln()
    } else {
        ln_front + l_pos + (-1.0 + (l_neg - l_pos).exp()).ln()
    };
    if !value.re.is_finite() {
        return Err(SpecialFnError::Convergence {
            terms: s_pos.terms + s_neg.terms,
        });
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfn::bessel::{bessel_i, bessel_j};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn imag_order_matches_real_k_at_zero_theta() {
        for &x in &[0.5, 1.0, 5.0] {
            let k0 = bessel_k(0.0, x).unwrap().re();
            let ki = bessel_k_imag(0.0, x).unwrap().re();
            assert!(rel(ki, k0) < 1e-12, "x={x}: {ki} vs {k0}");
            let keps = bessel_k_imag(1e-7, x).unwrap().re();
            assert!(rel(keps, k0) < 1e-10, "x={x} theta->0: {keps} vs {k0}");
        }
    }

    #[test]
    fn series_and_integral_routes_agree() {
        // Both routes are valid on an overlap strip; they must agree there.
        for &theta in &[0.5, 2.0, 5.0] {
            for &x in &[1.0, 4.0, 10.0] {
                let s = {
                    let out = bessel_i_imag_order_dd(theta, x).unwrap();
                    -std::f64::consts::PI * out.sum.im.to_f64()
                        / (std::f64::consts::PI * theta).sinh()
                };
                let i = bessel_k_imag_integral(theta, x).unwrap().re();
                assert!(
                    rel(s, i) < 1e-10,
                    "theta={theta} x={x}: series {s} vs integral {i}"
                );
            }
        }
    }

    #[test]
    fn scaled_product_is_consistent() {
        for &(theta, x) in &[(1.0, 1.0), (8.0, 0.3), (20.0, 0.5), (15.0, 12.0)] {
            let scaled = bessel_k_imag_scaled(theta, x).unwrap().re();
            let k = bessel_k_imag(theta, x).unwrap().re();
            let s = (std::f64::consts::PI * theta).sinh();
            assert!(
                (scaled - k * s).abs() <= 1e-9 * scaled.abs().max(1e-300),
                "theta={theta} x={x}"
            );
        }
    }

    #[test]
    fn imaginary_part_is_exactly_zero() {
        let r = bessel_k_imag(1.0, 1.0).unwrap();
        assert_eq!(r.value.im, 0.0);
    }

    #[test]
    fn complex_j_reduces_to_real_j() {
        for &(nu, x) in &[(0.0, 1.0), (2.5, 7.0), (3.7, 10.0), (1.2, 35.0)] {
            let c = bessel_j_complex(Complex64::new(nu, 0.0), x).unwrap();
            let r = bessel_j(nu, x).unwrap();
            assert!(rel(c.re(), r.re()) < 1e-11, "nu={nu} x={x}");
            assert!(c.value.im.abs() < 1e-14);
        }
    }

    #[test]
    fn complex_i_reduces_to_real_i() {
        for &(nu, x) in &[(0.7, 2.0), (-2.3, 5.0), (4.0, 12.0)] {
            let c = bessel_i_complex_order(Complex64::new(nu, 0.0), x).unwrap();
            let r = bessel_i(nu, x).unwrap();
            assert!(rel(c.re(), r.re()) < 1e-11, "nu={nu} x={x}");
        }
    }

    #[test]
    fn complex_k_ln_reduces_to_real_k() {
        for &(nu, x) in &[(0.8, 1.5), (3.2, 6.0)] {
            // A whisper of imaginary part forces the complex route.
            let lc = bessel_k_complex_order_ln(Complex64::new(nu, 1e-9), x).unwrap();
            let r = bessel_k(nu, x).unwrap().re().ln();
            assert!((lc.re - r).abs() < 1e-7, "nu={nu} x={x}: {} vs {r}", lc.re);
        }
    }

    #[test]
    fn complex_k_wronskian() {
        // I_nu(z) K_nu'(z) - I_nu'(z) K_nu(z) = -1/z checked by central
        // differences at genuinely complex order.
        let nu = Complex64::new(1.3, 2.1);
        let z = 2.7;
        let h = 1e-5;
        let iv = |x: f64| bessel_i_complex_order(nu, x).unwrap().value;
        let kv =
            |x: f64| bessel_k_complex_order_ln(nu, x).unwrap().exp();
        let di = (iv(z + h) - iv(z - h)) / (2.0 * h);
        let dk = (kv(z + h) - kv(z - h)) / (2.0 * h);
        let w = iv(z) * dk - di * kv(z);
        let expected = Complex64::new(-1.0 / z, 0.0);
        assert!((w - expected).norm() < 1e-8, "wronskian {w}");
    }

    #[test]
    fn j_complex_requires_series_radius() {
        assert!(bessel_j_complex(Complex64::new(0.0, 1.0), 50.0).is_err());
    }
}
