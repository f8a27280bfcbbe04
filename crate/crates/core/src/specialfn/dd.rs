//! Double-double ("dd") arithmetic: unevaluated sums of two `f64`s giving
//! roughly 32 significant decimal digits.
//!
//! The hypergeometric-type series in this crate (Bessel functions of complex
//! order, the Kummer function at mixed-sign parameters) cancel by factors up
//! to `exp(2x)`. Carrying the term recurrences and the accumulator in dd
//! arithmetic keeps the final relative error near `cancellation * 1e-32`
//! instead of `cancellation * 1e-16`, which is what the accuracy contracts of
//! [`crate::specialfn`] require.
//!
//! Only the operations the series kernels need are implemented: field
//! arithmetic, `sqrt`, `exp`, `ln`, `sin_cos`, `atan2`, a complex wrapper
//! [`Cdd`], and a Stirling-series `ln_gamma` for `Re z >= 1`.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    /// pi, 2*pi, pi/2 and ln(2) beyond f64 precision.
    pub const PI: Dd = Dd {
        hi: 3.141592653589793116e0,
        lo: 1.224646799147353207e-16,
    };
    pub const TWO_PI: Dd = Dd {
        hi: 6.283185307179586232e0,
        lo: 2.449293598294706414e-16,
    };
    pub const FRAC_PI_2: Dd = Dd {
        hi: 1.570796326794896558e0,
        lo: 6.123233995736766036e-17,
    };
    pub const LN_2: Dd = Dd {
        hi: 6.931471805599452862e-1,
        lo: 2.319046813846299558e-17,
    };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Self {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact product of two f64 values as a dd.
    #[inline]
    pub fn from_prod(a: f64, b: f64) -> Self {
        let (p, e) = two_prod(a, b);
        Dd { hi: p, lo: e }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn sqrt(self) -> Self {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        let y0 = self.hi.sqrt();
        // One dd Newton step squares the f64 accuracy of the seed.
        (Dd::from_f64(y0) + self / y0) * 0.5
    }

    pub fn exp(self) -> Self {
        if self.hi > 700.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let n = (self.hi / std::f64::consts::LN_2).round();
        let r = self - Dd::LN_2 * n;
        let mut sum = Dd::ONE + r;
        let mut term = r;
        for k in 2..40 {
            term = term * r / (k as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-35 * sum.hi.abs() {
                break;
            }
        }
        let scale = f64::powi(2.0, n as i32);
        Dd {
            hi: sum.hi * scale,
            lo: sum.lo * scale,
        }
    }

    pub fn ln(self) -> Self {
        debug_assert!(self.hi > 0.0);
        let mut y = Dd::from_f64(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Dd::ONE;
        }
        y
    }

    /// Simultaneous sine and cosine with argument reduction modulo pi/2.
    pub fn sin_cos(self) -> (Self, Self) {
        let k = (self.hi / std::f64::consts::FRAC_PI_2).round();
        let r = self - Dd::FRAC_PI_2 * k;
        let quadrant = (k as i64).rem_euclid(4);
        let r2 = r * r;
        // |r| <= pi/4, so ~16 Taylor terms reach 1e-34.
        let mut s = r;
        let mut term = r;
        for j in 1..20 {
            term = term * r2 / ((2 * j) as f64 * (2 * j + 1) as f64);
            s = if j % 2 == 1 { s - term } else { s + term };
            if term.hi.abs() < 1e-35 {
                break;
            }
        }
        let mut c = Dd::ONE;
        term = Dd::ONE;
        for j in 1..20 {
            term = term * r2 / ((2 * j - 1) as f64 * (2 * j) as f64);
            c = if j % 2 == 1 { c - term } else { c + term };
            if term.hi.abs() < 1e-35 {
                break;
            }
        }
        match quadrant {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    /// Four-quadrant arctangent, refined from the f64 seed by one rotation
    /// correction step.
    pub fn atan2(y: Dd, x: Dd) -> Self {
        if y.hi == 0.0 && y.lo == 0.0 {
            return if x.hi >= 0.0 { Dd::ZERO } else { Dd::PI };
        }
        let phi0 = y.hi.atan2(x.hi);
        let (s0, c0) = Dd::from_f64(phi0).sin_cos();
        let num = y * c0 - x * s0;
        let den = x * c0 + y * s0;
        // num/den ~ 1e-16, so atan(e) = e to double-double accuracy.
        Dd::from_f64(phi0) + num / den
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (s1, s2) = quick_two_sum(s1, s2 + t2);
        Dd { hi: s1, lo: s2 }
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs);
        let (s1, s2) = quick_two_sum(s1, s2 + self.lo);
        Dd { hi: s1, lo: s2 }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: f64) -> Dd {
        self + (-rhs)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (s1, s2) = quick_two_sum(p1, p2);
        Dd { hi: s1, lo: s2 }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs);
        let (s1, s2) = quick_two_sum(p1, p2 + self.lo * rhs);
        Dd { hi: s1, lo: s2 }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * q1;
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * q2;
        let q3 = r.hi / rhs.hi;
        let (s1, s2) = quick_two_sum(q1, q2);
        Dd { hi: s1, lo: s2 } + q3
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, rhs: f64) -> Dd {
        self / Dd::from_f64(rhs)
    }
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub const ONE: Cdd = Cdd {
        re: Dd::ONE,
        im: Dd::ZERO,
    };

    #[inline]
    pub fn new(re: Dd, im: Dd) -> Self {
        Cdd { re, im }
    }

    #[inline]
    pub fn from_c64(z: Complex64) -> Self {
        Cdd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    #[inline]
    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    #[inline]
    pub fn norm_sqr(self) -> Dd {
        self.re * self.re + self.im * self.im
    }

    pub fn ln(self) -> Self {
        Cdd {
            re: self.norm_sqr().ln() * 0.5,
            im: Dd::atan2(self.im, self.re),
        }
    }

    pub fn exp(self) -> Self {
        let m = self.re.exp();
        let (s, c) = self.im.sin_cos();
        Cdd {
            re: m * c,
            im: m * s,
        }
    }
}

impl Neg for Cdd {
    type Output = Cdd;
    #[inline]
    fn neg(self) -> Cdd {
        Cdd {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Add for Cdd {
    type Output = Cdd;
    #[inline]
    fn add(self, rhs: Cdd) -> Cdd {
        Cdd {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Add<f64> for Cdd {
    type Output = Cdd;
    #[inline]
    fn add(self, rhs: f64) -> Cdd {
        Cdd {
            re: self.re + rhs,
            im: self.im,
        }
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    #[inline]
    fn sub(self, rhs: Cdd) -> Cdd {
        Cdd {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    #[inline]
    fn mul(self, rhs: Cdd) -> Cdd {
        Cdd {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl Mul<Dd> for Cdd {
    type Output = Cdd;
    #[inline]
    fn mul(self, rhs: Dd) -> Cdd {
        Cdd {
            re: self.re * rhs,
            im: self.im * rhs,
        }
    }
}

impl Mul<f64> for Cdd {
    type Output = Cdd;
    #[inline]
    fn mul(self, rhs: f64) -> Cdd {
        Cdd {
            re: self.re * rhs,
            im: self.im * rhs,
        }
    }
}

impl Div for Cdd {
    type Output = Cdd;
    #[inline]
    fn div(self, rhs: Cdd) -> Cdd {
        let d = rhs.norm_sqr();
        Cdd {
            re: (self.re * rhs.re + self.im * rhs.im) / d,
            im: (self.im * rhs.re - self.re * rhs.im) / d,
        }
    }
}

impl Div<f64> for Cdd {
    type Output = Cdd;
    #[inline]
    fn div(self, rhs: f64) -> Cdd {
        Cdd {
            re: self.re / rhs,
            im: self.im / rhs,
        }
    }
}

/// Stirling coefficients B_{2n} / (2n (2n-1)) as exact rationals.
const STIRLING_NUM: [f64; 12] = [
    1.0, -1.0, 1.0, -1.0, 1.0, -691.0, 1.0, -3617.0, 43867.0, -174611.0, 854513.0, -236364091.0,
];
const STIRLING_DEN: [f64; 12] = [
    12.0, 360.0, 1260.0, 1680.0, 1188.0, 360360.0, 156.0, 122400.0, 244188.0, 125400.0, 63756.0,
    1506960.0,
];

/// log Gamma(z) in dd precision for Re(z) >= 1, via upward recurrence into the
/// Stirling regime |z| >= 32. The Bernoulli-number coefficients are exact
/// rationals, so the result is not limited by tabulated constants.
pub fn ln_gamma_cdd(z: Cdd) -> Cdd {
    debug_assert!(z.re.hi >= 1.0 - 1e-12);
    let mut w = z;
    let mut shifted = Cdd::ZERO;
    while w.norm_sqr().hi < 32.0 * 32.0 {
        shifted = shifted + w.ln();
        w = w + 1.0;
    }
    let ln_w = w.ln();
    let half_ln_two_pi = Dd::TWO_PI.ln() * 0.5;
    let mut result = (w - Cdd::new(Dd::from_f64(0.5), Dd::ZERO)) * ln_w - w
        + Cdd::new(half_ln_two_pi, Dd::ZERO);
    let w2 = w * w;
    let mut wp = w;
    for n in 0..STIRLING_NUM.len() {
        let coeff = Dd::from_f64(STIRLING_NUM[n]) / STIRLING_DEN[n];
        let term = Cdd::new(coeff, Dd::ZERO) / wp;
        result = result + term;
        if term.norm_sqr().hi < 1e-68 {
            break;
        }
        wp = wp * w2;
    }
    result - shifted
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd_close(a: Dd, b: f64, tol: f64) {
        assert!(
            (a.to_f64() - b).abs() <= tol * b.abs().max(1.0),
            "dd value {} vs {}",
            a.to_f64(),
            b
        );
    }

    #[test]
    fn arithmetic_identities() {
        let a = Dd::from_f64(0.1) + Dd::from_f64(0.2);
        let b = a - Dd::from_f64(0.2);
        // 0.1 recovered exactly: the dd residual keeps the rounding error.
        assert_eq!(b.hi, 0.1);
        let p = Dd::from_prod(1e8 + 1.0, 1e8 - 1.0);
        assert_eq!(p.to_f64(), 1e16 - 1.0);
    }

    #[test]
    fn exp_ln_roundtrip() {
        for &x in &[0.5, 1.0, 3.75, 40.0, -12.5, 200.0] {
            let e = Dd::from_f64(x).exp();
            let l = e.ln();
            assert!((l.to_f64() - x).abs() < 1e-28 * x.abs().max(1.0));
            // Residual in the lo component should sharpen beyond f64.
            let f64_only = x.exp();
            assert!((e.hi - f64_only).abs() <= 4.0 * f64::EPSILON * f64_only);
        }
        dd_close(Dd::ONE.exp(), std::f64::consts::E, 1e-15);
    }

    #[test]
    fn sin_cos_pythagoras_and_reduction() {
        for &x in &[0.3, 2.0, 31.4, 1000.0, -7.7] {
            let (s, c) = Dd::from_f64(x).sin_cos();
            let one = s * s + c * c;
            assert!((one.to_f64() - 1.0).abs() < 1e-29);
            assert!((s.hi - x.sin()).abs() < 1e-12 * 1.0_f64.max(x.abs() * 1e-13));
        }
    }

    #[test]
    fn atan2_recovers_angle() {
        for &phi in &[0.1, 1.0, 2.5, -2.0, 3.1] {
            let (s, c) = Dd::from_f64(phi).sin_cos();
            let back = Dd::atan2(s, c);
            assert!((back.to_f64() - phi).abs() < 1e-29);
        }
    }

    #[test]
    fn ln_gamma_matches_factorials() {
        // Gamma(5) = 24, Gamma(0.5+4)=Gamma(4.5)
        let g5 = ln_gamma_cdd(Cdd::from_c64(Complex64::new(5.0, 0.0)));
        dd_close(g5.re, 24.0_f64.ln(), 1e-28);
        assert!(g5.im.to_f64().abs() < 1e-30);
        // Gamma(1+i): |Gamma(1+i)|^2 = pi / sinh(pi)
        let g = ln_gamma_cdd(Cdd::from_c64(Complex64::new(1.0, 1.0)));
        let norm2 = (g.re * 2.0).exp().to_f64();
        let expected = std::f64::consts::PI / std::f64::consts::PI.sinh();
        assert!((norm2 - expected).abs() < 1e-14 * expected);
        // Known value Gamma(1+i) = 0.49801566811835604271 - 0.15494982830181068512 i
        let val = g.to_c64().exp();
        assert!((val.re - 0.49801566811835604271).abs() < 1e-15);
        assert!((val.im + 0.15494982830181068512).abs() < 1e-15);
    }

    #[test]
    fn sqrt_newton() {
        let r = Dd::from_f64(2.0).sqrt();
        let two = r * r;
        assert!((two.to_f64() - 2.0).abs() < 1e-30);
    }
}
