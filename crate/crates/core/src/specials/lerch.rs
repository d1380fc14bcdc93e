//! Lerch transcendent Phi(z, s, a) = sum_{n>=0} (n+a)^{-s} z^n for |z| < 1.

use num_complex::Complex64;

use super::PrecisionPolicy;
use crate::error::{Error, Result};

pub fn lerch_phi(
    z: Complex64,
    s: Complex64,
    a: Complex64,
    policy: &PrecisionPolicy,
) -> Result<Complex64> {
    let r = z.norm();
    if r >= 1.0 {
        return Err(Error::domain(format!("lerch_phi requires |z| < 1, got |z| = {r}")));
    }
    if a.re <= 0.0 {
        return Err(Error::domain(format!("lerch_phi requires Re a > 0, got a = {a}")));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zn = Complex64::new(1.0, 0.0);
    for n in 0..policy.max_terms {
        let term = zn * (-s * (a + n as f64).ln()).exp();
        sum += term;
        zn *= z;
        // geometric tail bound
        if term.norm() * r / (1.0 - r) < policy.target_abs_tol * 1e-3 && n > 2 {
            break;
        }
    }
    Ok(sum)
}
