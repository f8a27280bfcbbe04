//! Kummer confluent hypergeometric function Phi(a, b, z) for complex
//! parameters and real argument.
//!
//! The ascending series is summed in double-double arithmetic (mixed-sign
//! parameters make it cancel), with the large-z asymptotic expansion taking
//! over past z = 300 where the series cost and the exp(z) growth stop being
//! worthwhile.

use num_complex::Complex64;

use super::dd::{Cdd, Dd};
use super::gamma::ln_gamma;
use super::{check_finite, FnResult, SpecialFnError, POLE_GUARD};

const SERIES_LIMIT: f64 = 300.0;

pub(crate) struct KummerSeries {
    pub sum: Cdd,
    pub max_term: f64,
    pub terms: usize,
}

/// Ascending series sum_k (a)_k z^k / ((b)_k k!) in dd.
pub(crate) fn kummer_series_dd(
    a: Complex64,
    b: Complex64,
    z: f64,
) -> Result<KummerSeries, SpecialFnError> {
    let mut term = Cdd::ONE;
    let mut sum = Cdd::ONE;
    let mut max_term = 1.0f64;
    let mut streak = 0;
    let zd = Dd::from_f64(z);
    for k in 0..2000 {
        let kf = k as f64;
        let num = Cdd::new(Dd::from_f64(a.re + kf), Dd::from_f64(a.im)) * zd;
        let den = Cdd::new(
            Dd::from_prod(kf + 1.0, b.re + kf),
            Dd::from_prod(kf + 1.0, b.im),
        );
        term = term * num / den;
        sum = sum + term;
        let mag = term.norm_sqr().hi.sqrt();
        max_term = max_term.max(mag);
        if mag < 1e-34 * sum.norm_sqr().hi.sqrt().max(1e-300) {
            streak += 1;
            if streak >= 5 {
                return Ok(KummerSeries {
                    sum,
                    max_term,
                    terms: k + 1,
                });
            }
        } else {
            streak = 0;
        }
    }
    Err(SpecialFnError::Convergence { terms: 2000 })
}

/// Poincare expansion Phi ~ Gamma(b)/Gamma(a) e^z z^{a-b} P(z) for
/// z -> +infinity; returns the P-series and its truncation error.
pub(crate) fn kummer_asymptotic_p(
    a: Complex64,
    b: Complex64,
    z: f64,
) -> Result<(Complex64, f64, usize), SpecialFnError> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut min_mag = f64::MAX;
    for s in 0..60 {
        let sf = s as f64;
        let next = term * (b - a + sf) * (1.0 - a + sf) / ((sf + 1.0) * z);
        if next.norm() >= min_mag {
            // Terms started growing: asymptotic truncation error is the
            // smallest term reached.
            if min_mag < 1e-10 * sum.norm() {
                return Ok((sum, min_mag, s + 1));
            }
            return Err(SpecialFnError::Convergence { terms: s + 1 });
        }
        term = next;
        sum += term;
        min_mag = term.norm();
        if min_mag < 1e-16 * sum.norm() {
            return Ok((sum, min_mag, s + 2));
        }
    }
    Err(SpecialFnError::Convergence { terms: 60 })
}

/// Kummer confluent hypergeometric Phi(a, b, z).
pub fn kummer_m(a: Complex64, b: Complex64, z: f64) -> Result<FnResult, SpecialFnError> {
    check_finite("kummer_m a", a)?;
    check_finite("kummer_m b", b)?;
    if b.im == 0.0 && b.re <= 0.5 && (b.re - b.re.round()).abs() < POLE_GUARD {
        return Err(SpecialFnError::Pole {
            arg: b.re,
            guard: POLE_GUARD,
        });
    }
    if z == 0.0 {
        return Ok(FnResult::real(1.0, 0.0, 1));
    }
    if z.abs() <= SERIES_LIMIT {
        let out = kummer_series_dd(a, b, z)?;
        let value = out.sum.to_c64();
        let err = out.max_term * 1e-30 + value.norm() * 1e-14;
        return Ok(FnResult::complex(value, err, out.terms));
    }
    if z < 0.0 {
        // Kummer transformation maps to positive argument.
        let inner = kummer_m(b - a, b, -z)?;
        let scale = z.exp();
        return Ok(FnResult::complex(
            inner.value * scale,
            inner.abs_err * scale,
            inner.terms_used,
        ));
    }
    let (p, p_err, terms) = kummer_asymptotic_p(a, b, z)?;
    let ln_front = ln_gamma(b)? - ln_gamma(a)? + z + (a - b) * z.ln();
    if ln_front.re > 705.0 {
        return Err(SpecialFnError::Overflow {
            log_magnitude: ln_front.re,
        });
    }
    let front = ln_front.exp();
    let value = front * p;
    Ok(FnResult::complex(
        value,
        front.norm() * p_err + value.norm() * 1e-13,
        terms,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn empty_product_and_exponential() {
        assert_eq!(kummer_m(c(0.7), c(1.9), 0.0).unwrap().re(), 1.0);
        // Phi(b, b, z) = e^z
        for &z in &[0.5, 3.0, 150.0] {
            let v = kummer_m(c(1.4), c(1.4), z).unwrap().re();
            assert!((v - z.exp()).abs() < 1e-12 * z.exp(), "z={z}");
        }
    }

    #[test]
    fn closed_form_1_2() {
        // Phi(1, 2, z) = (e^z - 1)/z
        let z = 1.0;
        let v = kummer_m(c(1.0), c(2.0), z).unwrap().re();
        let expected = (z.exp() - 1.0) / z;
        assert!((v - expected).abs() < 1e-13 * expected);
    }

    #[test]
    fn asymptotic_joins_series() {
        // Phi(b,b,z) = e^z across the series/asymptotic seam.
        let below = kummer_m(c(0.9), c(0.9), 299.5).unwrap().re();
        let above = kummer_m(c(0.9), c(0.9), 300.5).unwrap().re();
        assert!((below / 299.5f64.exp() - 1.0).abs() < 1e-11);
        assert!((above / 300.5f64.exp() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn mixed_sign_parameters_cancel_safely() {
        // Phi(-8.5, 2.3, 10): heavy cancellation; verify against the Kummer
        // transformation e^z Phi(b-a, b, -z) evaluated independently.
        let a = c(-8.5);
        let b = c(2.3);
        let z = 10.0;
        let direct = kummer_m(a, b, z).unwrap().re();
        // alternating series for Phi(10.8, 2.3, -10) in dd via the public path
        let other = kummer_m(b - a, b, -z).unwrap().re() * z.exp();
        assert!(
            (direct - other).abs() < 1e-10 * direct.abs(),
            "{direct} vs {other}"
        );
    }

    #[test]
    fn pole_in_b_rejected() {
        assert!(matches!(
            kummer_m(c(1.0), c(-2.0), 1.0),
            Err(SpecialFnError::Pole { .. })
        ));
    }

    #[test]
    fn complex_parameters() {
        // Phi(a,b,z) with complex a: check against the contiguous relation
        // Phi(a+1,b,z) = ((2a - b + z) Phi(a,b,z) + (b - a) Phi(a-1,b,z))/a
        let a = Complex64::new(0.8, 1.1);
        let b = Complex64::new(2.0, -0.3);
        let z = 2.5;
        let f = |aa: Complex64| kummer_m(aa, b, z).unwrap().value;
        let lhs = f(a + 1.0) * a;
        let rhs = (a * 2.0 - b + z) * f(a) + (b - a) * f(a - 1.0);
        assert!((lhs - rhs).norm() < 1e-11 * rhs.norm());
    }
}
