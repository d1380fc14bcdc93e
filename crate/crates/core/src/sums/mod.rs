//! The oscillatory sums: zero-side Z(x;t,alpha) and its character twists,
//! Fujii's finite sum, the Linnik-Sprindzuk sum, the prime-side mollified
//! sums Psi(x;s,alpha) and Psi(x;s,chi), truncated explicit-formula
//! right-hand sides, the exponential integral G(x;alpha,z) with its
//! quadrature oracle and large-|y| asymptotics, and the main-term
//! predictions.

mod explicit;
mod gfun;
mod prime_side;
mod summation;
mod zero_side;

pub use explicit::{predict_main_terms, predict_principal_main, predict_twisted_coeff,
    psi_explicit_rhs, MainTermPrediction};
pub use gfun::{g_asymptotic, g_main_term_exact, g_quadrature, GAsymptotic};
pub use prime_side::{psi_chi_sum, psi_sum, psi_twisted_sum};
pub use summation::{compensated_sum, parallel_compensated_sum, Compensation};
pub use zero_side::{fujii_sum, linnik_sprindzuk_sum, twisted_zero_sum, weighted_zero_sum,
    weighted_zero_sum_with, TwistedSumResult};

use num_complex::Complex64;

use crate::arith::gcd;
use crate::error::{Error, Result};

/// An exact rational phase a/q in lowest terms, 1 <= a <= q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalPhase {
    a: u64,
    q: u64,
}

impl RationalPhase {
    pub fn new(a: u64, q: u64) -> Result<Self> {
        if a == 0 || q == 0 || a > q {
            return Err(Error::domain(format!(
                "rational phase requires 1 <= a <= q, got {a}/{q}"
            )));
        }
        if gcd(a, q) != 1 {
            return Err(Error::domain(format!("rational phase {a}/{q} not in lowest terms")));
        }
        Ok(RationalPhase { a, q })
    }

    pub fn numer(self) -> u64 {
        self.a
    }

    pub fn denom(self) -> u64 {
        self.q
    }

    pub fn value(self) -> f64 {
        self.a as f64 / self.q as f64
    }
}

/// The phase alpha: exact rational or decimal (treated as irrational).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alpha {
    Rational(RationalPhase),
    Real(f64),
}

impl Alpha {
    pub fn value(self) -> f64 {
        match self {
            Alpha::Rational(r) => r.value(),
            Alpha::Real(v) => v,
        }
    }

    pub fn rational(self) -> Option<RationalPhase> {
        match self {
            Alpha::Rational(r) => Some(r),
            Alpha::Real(_) => None,
        }
    }
}

/// Parameters shared by the x-truncated sums.
#[derive(Debug, Clone, Copy)]
pub struct SumParams {
    pub x: f64,
    pub t: f64,
    pub alpha: Alpha,
    pub s: Complex64,
}

impl SumParams {
    pub fn new(x: f64, t: f64, alpha: Alpha, s: Complex64) -> Result<Self> {
        if !(x > 1.0) {
            return Err(Error::domain(format!("x must exceed 1, got {x}")));
        }
        if !(alpha.value() > 0.0) {
            return Err(Error::domain(format!("alpha must be positive, got {}", alpha.value())));
        }
        Ok(SumParams { x, t, alpha, s })
    }
}

/// A computed sum with its diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct SumResult {
    pub value: Complex64,
    pub terms_used: usize,
    pub truncation_tail_bound: f64,
    pub compensation: Compensation,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_phase_validation() {
        assert!(RationalPhase::new(1, 1).is_ok());
        assert!(RationalPhase::new(2, 5).is_ok());
        assert!(RationalPhase::new(0, 5).is_err());
        assert!(RationalPhase::new(6, 5).is_err());
        assert!(RationalPhase::new(2, 4).is_err());
    }

    #[test]
    fn params_validation() {
        let s = Complex64::new(0.5, 0.0);
        assert!(SumParams::new(10.0, 0.0, Alpha::Real(1.0), s).is_ok());
        assert!(SumParams::new(0.5, 0.0, Alpha::Real(1.0), s).is_err());
        assert!(SumParams::new(10.0, 0.0, Alpha::Real(0.0), s).is_err());
    }
}
