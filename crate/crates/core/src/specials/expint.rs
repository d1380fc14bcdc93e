//! Generalized exponential integral E_s(z) = z^{s-1} Gamma(1-s, z).

use num_complex::Complex64;

use super::gamma::gamma_complex;
use super::PrecisionPolicy;
use crate::error::{Error, Result};

const SERIES_RADIUS: f64 = 8.0;

fn near_integer(s: Complex64) -> Option<i64> {
    if s.im.abs() < 1e-12 && (s.re - s.re.round()).abs() < 1e-12 {
        Some(s.re.round() as i64)
    } else {
        None
    }
}

/// E_s(z) for z != 0 with |arg z| < 3pi/2.
///
/// Small |z|: power series around the origin (with the log form for integer
/// order >= 1). Large |z|: the standard continued fraction, evaluated by the
/// modified Lentz scheme.
pub fn exp_integral_e(s: Complex64, z: Complex64, policy: &PrecisionPolicy) -> Result<Complex64> {
    if z.norm() == 0.0 {
        return Err(Error::domain("exp_integral_e at z = 0"));
    }
    if let Some(n) = near_integer(s) {
        if n <= 0 {
            // E_{-m}(z) = m! e^{-z} [sum_{k<=m} z^k/k!] / z^{m+1}, exact closed form
            let m = (-n) as u32;
            let mut acc = Complex64::new(1.0, 0.0);
            let mut zk = Complex64::new(1.0, 0.0);
            let mut fact = 1.0f64;
            for k in 1..=m {
                zk *= z;
                fact *= k as f64;
                acc += zk / fact;
            }
            let m_fact = (1..=m).fold(1.0f64, |a, k| a * k as f64);
            return Ok((-z).exp() * m_fact * acc / z.powu(m + 1));
        }
        if z.norm() < SERIES_RADIUS {
            return integer_series(n as u32, z, policy);
        }
    }
    if z.norm() < SERIES_RADIUS {
        // E_s(z) = Gamma(1-s) z^{s-1} - sum_k (-z)^k / (k! (1-s+k))
        let g = gamma_complex(1.0 - s)?;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0); // (-z)^k / k!
        let one_minus_s = 1.0 - s;
        for k in 0..policy.max_terms {
            let denom = one_minus_s + k as f64;
            sum += term / denom;
            term *= -z / (k as f64 + 1.0);
            if term.norm() < policy.target_abs_tol * 1e-3 && k > 3 {
                break;
            }
        }
        Ok(g * (z.ln() * (s - 1.0)).exp() - sum)
    } else {
        continued_fraction(s, z, policy)
    }
}

// E_n(z) for integer n >= 1 and small |z|:
// E_1(z) = -gamma - Log z + sum_{k>=1} (-1)^{k+1} z^k / (k k!), then recur up.
fn integer_series(n: u32, z: Complex64, policy: &PrecisionPolicy) -> Result<Complex64> {
    const EULER_GAMMA: f64 = 0.5772156649015329;
    let mut e = -EULER_GAMMA - z.ln();
    let mut term = Complex64::new(1.0, 0.0);
    for k in 1..policy.max_terms {
        term *= -z / k as f64;
        e -= term / k as f64;
        if term.norm() < policy.target_abs_tol * 1e-3 && k > 3 {
            break;
        }
    }
    let emz = (-z).exp();
    for j in 1..n {
        e = (emz - z * e) / j as f64;
    }
    Ok(e)
}

fn continued_fraction(s: Complex64, z: Complex64, policy: &PrecisionPolicy) -> Result<Complex64> {
    let tiny = Complex64::new(1e-290, 0.0);
    let mut b = z + s;
    let mut c = Complex64::new(1e290, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..policy.max_terms {
        let a = -(i as f64) * (s + (i as f64 - 1.0));
        b += 2.0;
        d = a * d + b;
        if d.norm() < 1e-290 {
            d = tiny;
        }
        c = b + a / c;
        if c.norm() < 1e-290 {
            c = tiny;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).norm() < 1e-15 {
            return Ok(h * (-z).exp());
        }
    }
    Err(Error::QuadratureNonConvergence {
        subdivisions: policy.max_terms,
        last_err: f64::NAN,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    #[test]
    fn e1_at_one_vs_quadrature() {
        // oracle: adaptive Simpson of int_1^inf e^{-t}/t dt
        let oracle = {
            let f = |t: f64| (-t).exp() / t;
            let mut acc = 0.0;
            let mut a = 1.0;
            while a < 60.0 {
                let b = a + 0.25;
                // Simpson on [a,b] with 32 panels
                let n = 32;
                let h = (b - a) / n as f64;
                let mut s = f(a) + f(b);
                for i in 1..n {
                    s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
                }
                acc += s * h / 3.0;
                a = b;
            }
            acc
        };
        let e1 = exp_integral_e(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), &p()).unwrap();
        assert!((e1.re - oracle).abs() < 1e-9, "{} vs {}", e1.re, oracle);
        assert!((e1.re - 0.2193839344).abs() < 1e-9);
        assert!(e1.im.abs() < 1e-14);
    }

    #[test]
    fn e0_closed_form() {
        let z = Complex64::new(2.0, 1.0);
        let e0 = exp_integral_e(Complex64::new(0.0, 0.0), z, &p()).unwrap();
        let exact = (-z).exp() / z;
        assert!((e0 - exact).norm() < 1e-14);
    }

    #[test]
    fn recurrence_identity() {
        // E_{s+1}(z) = (e^{-z} - z E_s(z)) / s
        for &(sre, sim) in &[(0.5, 0.0), (-0.3, 0.0), (1.7, 0.4), (2.0, -1.0)] {
            for &(zre, zim) in &[(1.0, 0.0), (0.5, 2.0), (0.0, 3.0), (9.0, 4.0), (12.0, 0.0)] {
                let s = Complex64::new(sre, sim);
                let z = Complex64::new(zre, zim);
                let lhs = exp_integral_e(s + 1.0, z, &p()).unwrap();
                let rhs = ((-z).exp() - z * exp_integral_e(s, z, &p()).unwrap()) / s;
                assert!((lhs - rhs).norm() < 1e-9, "s={s} z={z} lhs={lhs} rhs={rhs}");
            }
        }
    }

    #[test]
    fn series_cf_consistency() {
        // both evaluation routes near the switchover radius
        for &(sre, sim) in &[(0.5, 0.0), (-0.5, 0.0), (1.3, 0.7)] {
            let s = Complex64::new(sre, sim);
            let z_lo = Complex64::new(5.0, 5.5); // |z| ~ 7.4, series
            let z_hi = z_lo * 1.14; // just over the radius, continued fraction
            let a = exp_integral_e(s, z_lo, &p()).unwrap();
            let b = continued_fraction(s, z_lo, &p()).unwrap();
            assert!((a - b).norm() < 1e-11, "s={s}");
            let c = exp_integral_e(s, z_hi, &p()).unwrap();
            let d = {
                // series route, forced
                let g = gamma_complex(1.0 - s).unwrap();
                let mut sum = Complex64::new(0.0, 0.0);
                let mut term = Complex64::new(1.0, 0.0);
                for k in 0..400 {
                    sum += term / (1.0 - s + k as f64);
                    term *= -z_hi / (k as f64 + 1.0);
                }
                g * (z_hi.ln() * (s - 1.0)).exp() - sum
            };
            assert!((c - d).norm() < 1e-10, "s={s}");
        }
    }

    #[test]
    fn zero_argument_is_error() {
        assert!(exp_integral_e(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), &p()).is_err());
    }
}
