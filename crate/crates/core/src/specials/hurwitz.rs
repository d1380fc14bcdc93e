//! Hurwitz zeta by Euler-Maclaurin summation.

use num_complex::Complex64;

use super::PrecisionPolicy;
use crate::error::{Error, Result};

/// Bernoulli numbers B_2, B_4, ..., B_30.
pub(crate) const BERNOULLI_2N: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

pub(crate) const MAX_EM_ORDER: usize = BERNOULLI_2N.len();

/// zeta(s, a) = sum_{n>=0} (n+a)^{-s} continued to s != 1, for 0 < a <= 1.
///
/// Direct terms up to N ~ 0.6 |Im s|, then the integral, half-term, and
/// Bernoulli corrections. Returns the value and an error estimate (magnitude
/// of the last correction term).
pub fn hurwitz_zeta(s: Complex64, a: f64, policy: &PrecisionPolicy) -> Result<(Complex64, f64)> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::domain(format!("hurwitz_zeta requires 0 < a <= 1, got a={a}")));
    }
    policy.validate()?;
    if (s - Complex64::new(1.0, 0.0)).norm() < 1e-10 {
        return Err(Error::Pole {
            function: "hurwitz_zeta",
            location: "s = 1".into(),
        });
    }
    let n_direct = 10usize.max((0.6 * s.im.abs()).ceil() as usize);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for k in 0..n_direct {
        // Kahan-compensated: the direct block dominates the rounding budget
        let term = (-s * (k as f64 + a).ln()).exp();
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    let w = n_direct as f64 + a;
    let ln_w = w.ln();
    // integral term w^{1-s}/(s-1) and boundary half-term w^{-s}/2
    let w_pow = (-s * ln_w).exp();
    sum += w_pow * w / (s - 1.0) + 0.5 * w_pow;
    // Bernoulli corrections: B_{2j}/(2j)! * s(s+1)...(s+2j-2) * w^{-s-2j+1}
    let mut rising = s; // s ... (s+2j-2), built incrementally
    let mut fact = 2.0; // (2j)!
    let mut w_dec = w_pow / w; // w^{-s-2j+1}
    let mut last = 0.0;
    for (j, &b2n) in BERNOULLI_2N.iter().take(policy.euler_maclaurin_order).enumerate() {
        let term = b2n / fact * rising * w_dec;
        sum += term;
        last = term.norm();
        if last < policy.target_abs_tol * 1e-3 {
            break;
        }
        let jj = 2 * (j + 1);
        rising *= (s + (jj - 1) as f64) * (s + jj as f64);
        fact *= ((jj + 1) * (jj + 2)) as f64;
        w_dec /= w * w;
    }
    Ok((sum, last.max(f64::EPSILON * n_direct as f64)))
}
