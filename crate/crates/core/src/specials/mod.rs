//! Complex special functions: Gamma and companions, Hurwitz zeta, the
//! generalized exponential integral, Kummer's 1F1, and the Lerch transcendent.
//!
//! Everything uses the principal branch: w^s is exp(s Log w) with Log the
//! principal logarithm.

mod expint;
mod gamma;
mod hurwitz;
mod kummer;
mod lerch;

pub use expint::exp_integral_e;
pub use gamma::{digamma, gamma_complex, log_gamma};
pub use hurwitz::hurwitz_zeta;
pub use kummer::kummer_1f1;
pub use lerch::lerch_phi;

use crate::error::{Error, Result};

/// Tolerances and truncation orders shared by the series evaluators.
#[derive(Debug, Clone, Copy)]
pub struct PrecisionPolicy {
    pub target_abs_tol: f64,
    pub max_terms: usize,
    /// Number of Bernoulli correction terms in Euler-Maclaurin tails.
    pub euler_maclaurin_order: usize,
    pub quadrature_rel_tol: f64,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            target_abs_tol: 1e-12,
            max_terms: 200_000,
            euler_maclaurin_order: 12,
            quadrature_rel_tol: 1e-10,
        }
    }
}

impl PrecisionPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.target_abs_tol > 0.0 && self.quadrature_rel_tol > 0.0) {
            return Err(Error::domain("tolerances must be positive"));
        }
        if self.euler_maclaurin_order == 0 || self.euler_maclaurin_order > hurwitz::MAX_EM_ORDER {
            return Err(Error::domain(format!(
                "euler_maclaurin_order must be in 1..={}",
                hurwitz::MAX_EM_ORDER
            )));
        }
        Ok(())
    }
}
