//! Numerics for oscillatory sums over zeros of the Riemann zeta function and
//! Dirichlet L-functions: zero-side and prime-side sums, truncated explicit
//! formulas, and detection of L-function zero ordinates as peaks of
//! character-twisted sums over zeta zeros.

pub mod arith;
pub mod characters;
pub mod detect;
pub mod error;
pub mod lfunc;
pub mod specials;
pub mod sums;
pub mod zerodata;

pub use error::{Error, Result};
pub use num_complex::Complex64;
