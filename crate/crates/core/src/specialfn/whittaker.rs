//! Whittaker functions M and W.
//!
//! Conventions (z > 0 throughout):
//!
//!   M_{lambda,mu}(z) = z^{mu+1/2} e^{-z/2} Phi(mu - lambda + 1/2, 2 mu + 1, z)
//!   W_{lambda,mu}(z) = Gamma(-2mu)/Gamma(1/2-mu-lambda) M_{lambda,mu}(z)
//!                    + Gamma(2mu)/Gamma(1/2+mu-lambda) M_{lambda,-mu}(z)
//!
//! The sign in the exponential factor of M follows from the special case
//! M_{lambda,lambda-1/2}(z) = e^{-z/2} z^lambda (where Phi = 1) and from the
//! z -> infinity asymptotics, both of which the tests pin down.
//!
//! W routes: the Gamma combination (all parts in dd) while its exp(z)
//! cancellation is affordable, the direct integral representation
//!
//!   W = z^{mu+1/2} e^{-z/2} / Gamma(mu-lambda+1/2)
//!       int_0^inf t^{mu-lambda-1/2} e^{-t} (1+t/z)^{mu+lambda-1/2} dt
//!
//! when 2 mu sits near an integer (where the combination is singular) or z
//! is large, and the Poincare expansion W ~ e^{-z/2} z^lambda once it
//! converges.

use num_complex::Complex64;

use super::bessel::gl_panels;
use super::dd::{ln_gamma_cdd, Cdd, Dd};
use super::gamma::ln_gamma_real;
use super::kummer::{kummer_asymptotic_p, kummer_series_dd};
use super::{FnResult, SpecialFnError, MU_INTEGER_GUARD};

/// Whittaker index pair; `mu >= 0` by convention (the companion solution
/// M_{lambda,-mu} carries the sign).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WhittakerIndex {
    pub lambda: f64,
    pub mu: f64,
}

impl WhittakerIndex {
    pub fn new(lambda: f64, mu: f64) -> Result<Self, SpecialFnError> {
        if !lambda.is_finite() || !mu.is_finite() {
            return Err(SpecialFnError::Domain(
                "Whittaker indices must be finite".into(),
            ));
        }
        if mu < 0.0 {
            return Err(SpecialFnError::Domain(format!(
                "mu must be >= 0 (got {mu}); use the M_{{lambda,-mu}} companion"
            )));
        }
        Ok(WhittakerIndex { lambda, mu })
    }

    /// True when 2*mu is within the guard distance of an integer, i.e. the
    /// M-combination for W is near-singular.
    pub fn near_integer_two_mu(&self) -> bool {
        let t = 2.0 * self.mu;
        (t - t.round()).abs() < MU_INTEGER_GUARD
    }
}

const SERIES_LIMIT: f64 = 300.0;

/// M value in dd for z <= SERIES_LIMIT; mu may be negative here (internal
/// companion use). Returns the dd value together with the series size.
fn m_value_dd(lambda: f64, mu: f64, z: f64) -> Result<(Dd, f64, usize), SpecialFnError> {
    let a = Complex64::new(mu - lambda + 0.5, 0.0);
    let b = Complex64::new(2.0 * mu + 1.0, 0.0);
    if (b.re - b.re.round()).abs() < 1e-13 && b.re <= 0.0 {
        return Err(SpecialFnError::Pole {
            arg: b.re,
            guard: 1e-13,
        });
    }
    let series = kummer_series_dd(a, b, z)?;
    let ln_pref = Dd::from_f64(z).ln() * (mu + 0.5) - Dd::from_f64(z / 2.0);
    let value = ln_pref.exp() * series.sum.re;
    let pref = ln_pref.to_f64().exp();
    Ok((value, series.max_term * pref, series.terms))
}

/// Whittaker function of the first kind.
pub fn whittaker_m(idx: WhittakerIndex, z: f64) -> Result<FnResult, SpecialFnError> {
    if z <= 0.0 {
        return Err(SpecialFnError::Domain(format!(
            "whittaker_m requires z > 0, got {z}"
        )));
    }
    let WhittakerIndex { lambda, mu } = idx;
    if z <= SERIES_LIMIT {
        let (value, max_term, terms) = m_value_dd(lambda, mu, z)?;
        let v = value.to_f64();
        return Ok(FnResult::real(v, max_term * 1e-30 + v.abs() * 1e-14, terms));
    }
    let ln = whittaker_m_log(idx, z)?;
    if ln > 705.0 {
        return Err(SpecialFnError::Overflow { log_magnitude: ln });
    }
    Ok(FnResult::real(ln.exp(), ln.exp() * 1e-11, 1))
}

/// ln M_{lambda,mu}(z); requires M > 0 on the evaluation route (true for
/// the bond-pricing family, where the Kummer parameters are positive).
pub fn whittaker_m_log(idx: WhittakerIndex, z: f64) -> Result<f64, SpecialFnError> {
    if z <= 0.0 {
        return Err(SpecialFnError::Domain(format!(
            "whittaker_m_log requires z > 0, got {z}"
        )));
    }
    let WhittakerIndex { lambda, mu } = idx;
    if z <= SERIES_LIMIT {
        let a = Complex64::new(mu - lambda + 0.5, 0.0);
        let b = Complex64::new(2.0 * mu + 1.0, 0.0);
        let series = kummer_series_dd(a, b, z)?;
        if series.sum.re.hi <= 0.0 {
            return Err(SpecialFnError::Domain(
                "whittaker_m_log: M is not positive here".into(),
            ));
        }
        return Ok((mu + 0.5) * z.ln() - z / 2.0 + series.sum.re.ln().to_f64());
    }
    // M ~ Gamma(1+2mu)/Gamma(mu-lambda+1/2) e^{z/2} z^{-lambda} P(z)
    let a = Complex64::new(mu - lambda + 0.5, 0.0);
    let b = Complex64::new(2.0 * mu + 1.0, 0.0);
    let (p, _err, _terms) = kummer_asymptotic_p(a, b, z)?;
    if p.re <= 0.0 {
        return Err(SpecialFnError::Domain(
            "whittaker_m_log: asymptotic head is not positive".into(),
        ));
    }
    Ok(ln_gamma_real(1.0 + 2.0 * mu)? - ln_gamma_real(mu - lambda + 0.5)? + z / 2.0
        - lambda * z.ln()
        + p.re.ln())
}

/// Real Gamma in dd, all real arguments away from poles.
fn gamma_dd_real(x: f64) -> Result<Dd, SpecialFnError> {
    if x >= 1.0 {
        return Ok(ln_gamma_cdd(Cdd::from_c64(Complex64::new(x, 0.0))).re.exp());
    }
    if x > 0.0 {
        // Gamma(x) = Gamma(x+2) / (x (x+1))
        let up = ln_gamma_cdd(Cdd::from_c64(Complex64::new(x + 2.0, 0.0))).re.exp();
        return Ok(up / (Dd::from_f64(x) * Dd::from_f64(x + 1.0)));
    }
    if (x - x.round()).abs() < 1e-12 {
        return Err(SpecialFnError::Pole {
            arg: x,
            guard: 1e-12,
        });
    }
    // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x)), 1 - x > 1.
    let (s, _) = (Dd::PI * x).sin_cos();
    let g = ln_gamma_cdd(Cdd::from_c64(Complex64::new(1.0 - x, 0.0))).re.exp();
    Ok(Dd::PI / (s * g))
}

/// W by the Gamma-weighted combination of M_{lambda,+mu} and M_{lambda,-mu},
/// entirely in dd. Loses exp(z) digits of cancellation: confined to z <= 35.
fn w_by_combination(lambda: f64, mu: f64, z: f64) -> Result<FnResult, SpecialFnError> {
    let (m_pos, max_pos, t1) = m_value_dd(lambda, mu, z)?;
    let (m_neg, max_neg, t2) = m_value_dd(lambda, -mu, z)?;
    let c_pos = gamma_dd_real(-2.0 * mu)? / gamma_dd_real(0.5 - mu - lambda)?;
    let c_neg = gamma_dd_real(2.0 * mu)? / gamma_dd_real(0.5 + mu - lambda)?;
    let value = c_pos * m_pos + c_neg * m_neg;
    let v = value.to_f64();
    let scale = (max_pos * c_pos.to_f64().abs()).max(max_neg * c_neg.to_f64().abs());
    Ok(FnResult::real(v, scale * 1e-29 + v.abs() * 1e-13, t1 + t2))
}

/// W by its direct integral representation; valid for mu - lambda + 1/2 > 0.
fn w_by_integral(lambda: f64, mu: f64, z: f64) -> Result<FnResult, SpecialFnError> {
    let s = mu - lambda - 0.5; // endpoint exponent, > -1 required
    let p = mu + lambda - 0.5;
    if s <= -1.0 {
        return Err(SpecialFnError::Domain(format!(
            "W integral representation needs mu - lambda + 1/2 > 0 (lambda={lambda}, mu={mu})"
        )));
    }
    let integrand = |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        (s * t.ln() - t + p * (t / z).ln_1p()).exp()
    };
    // Tail cutoff: integrand ~ t^{s+p} e^{-t} for t >> z.
    let mut t_end = 40.0 + 2.0 * (s + p).max(0.0);
    while integrand(t_end) > 1e-22 {
        t_end *= 1.5;
    }
    // [0,1]: substitute t = u^m to absorb the algebraic endpoint.
    let m = if s >= 1.0 { 1 } else { (2.0 / (s + 1.0)).ceil() as i32 };
    let mf = m as f64;
    let head = |u: f64| mf * u.powi(m - 1) * integrand(u.powi(m));
    let eval = |n1: usize, n2: usize| {
        gl_panels(head, 0.0, 1.0, n1) + gl_panels(integrand, 1.0, t_end, n2)
    };
    let coarse = eval(8, 24);
    let fine = eval(16, 48);
    let quad_err = (fine - coarse).abs();
    let ln_front = (mu + 0.5) * z.ln() - z / 2.0 - ln_gamma_real(mu - lambda + 0.5)?;
    if ln_front + fine.abs().max(1e-300).ln() > 705.0 {
        return Err(SpecialFnError::Overflow {
            log_magnitude: ln_front,
        });
    }
    let front = ln_front.exp();
    Ok(FnResult::real(
        front * fine,
        front * (quad_err + fine.abs() * 1e-13),
        (8 + 24 + 16 + 48) * 20,
    ))
}

/// Poincare expansion W ~ e^{-z/2} z^lambda sum_s, usable once the terms
/// reach 1e-14 before growing.
fn w_asymptotic(lambda: f64, mu: f64, z: f64) -> Option<FnResult> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut min_mag = f64::MAX;
    for s in 0..50 {
        let sf = s as f64;
        let next = term * (mu - lambda + 0.5 + sf) * (0.5 - lambda - mu + sf)
            / (-(sf + 1.0) * z);
        if next.abs() >= min_mag {
            return None;
        }
        term = next;
        min_mag = term.abs();
        sum += term;
        if min_mag < 1e-14 * sum.abs() {
            let front = (-z / 2.0 + lambda * z.ln()).exp();
            return Some(FnResult::real(
                front * sum,
                front * (min_mag + sum.abs() * 1e-14),
                s + 2,
            ));
        }
    }
    None
}

/// Whittaker function of the second kind.
pub fn whittaker_w(idx: WhittakerIndex, z: f64) -> Result<FnResult, SpecialFnError> {
    if z <= 0.0 {
        return Err(SpecialFnError::Domain(format!(
            "whittaker_w requires z > 0, got {z}"
        )));
    }
    let WhittakerIndex { lambda, mu } = idx;
    if z >= 80.0 {
        if let Some(res) = w_asymptotic(lambda, mu, z) {
            return Ok(res);
        }
    }
    if idx.near_integer_two_mu() || z > 35.0 {
        return w_by_integral(lambda, mu, z);
    }
    w_by_combination(lambda, mu, z)
}
