//! Generalized Laguerre polynomials L_n^alpha via the three-term recurrence
//!
//!   (k+1) L_{k+1} = ((2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}).

use super::SpecialFnError;

pub fn laguerre(n: i64, alpha: f64, x: f64) -> Result<f64, SpecialFnError> {
    if n < 0 {
        return Err(SpecialFnError::Domain(format!(
            "laguerre degree must be nonnegative, got {n}"
        )));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degrees() {
        assert_eq!(laguerre(0, 0.7, 3.0).unwrap(), 1.0);
        assert!((laguerre(1, 0.7, 3.0).unwrap() - (1.0 + 0.7 - 3.0)).abs() < 1e-15);
        // L_2^a(x) = x^2/2 - (a+2)x + (a+1)(a+2)/2
        let (a, x) = (0.3, 1.4);
        let expected = x * x / 2.0 - (a + 2.0) * x + (a + 1.0) * (a + 2.0) / 2.0;
        assert!((laguerre(2, a, x).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn rejects_negative_degree() {
        assert!(laguerre(-1, 0.0, 0.0).is_err());
    }
}
