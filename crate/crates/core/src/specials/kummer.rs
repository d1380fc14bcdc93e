//! Kummer's confluent hypergeometric function 1F1(a; c; z).

use num_complex::Complex64;

use super::PrecisionPolicy;
use crate::error::{Error, Result};

/// Taylor series with term-ratio stopping. Intended for moderate |z|; the
/// regime used here (a = 1, large |c|) converges in a handful of terms.
pub fn kummer_1f1(
    a: Complex64,
    c: Complex64,
    z: Complex64,
    policy: &PrecisionPolicy,
) -> Result<Complex64> {
    if c.im.abs() < 1e-12 && (c.re - c.re.round()).abs() < 1e-12 && c.re.round() <= 0.0 {
        return Err(Error::Pole {
            function: "kummer_1f1",
            location: format!("c = {c}"),
        });
    }
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut small_streak = 0;
    for k in 0..policy.max_terms {
        let kf = k as f64;
        term *= (a + kf) / (c + kf) * z / (kf + 1.0);
        sum += term;
        if term.norm() < policy.target_abs_tol * 1e-3 * (1.0 + sum.norm()) {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(sum);
            }
        } else {
            small_streak = 0;
        }
    }
    Ok(sum)
}
