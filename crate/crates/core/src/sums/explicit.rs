//! Truncated explicit-formula right-hand sides for the mollified prime sums,
//! and the closed-form main-term predictions.

use num_complex::Complex64;

use super::summation::{compensated_sum, Compensation};
use super::{RationalPhase, SumResult};
use crate::arith::{factorize, mobius, totient};
use crate::characters::{gauss_sum, DirichletCharacter};
use crate::error::{Error, Result};
use crate::lfunc::{contour_taylor, order_at, zeta_character};
use crate::specials::PrecisionPolicy;
use crate::zerodata::ZeroList;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

fn cis(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

fn e_pi_i_4() -> Complex64 {
    cis(std::f64::consts::FRAC_PI_4)
}

/// Contour radius schedule for the log-derivative evaluations.
const RADII: [f64; 3] = [0.1, 0.05, 0.025];

fn taylor_with_retry(
    s: Complex64,
    chi: &DirichletCharacter,
    k_max: usize,
    policy: &PrecisionPolicy,
) -> Result<Vec<Complex64>> {
    let mut last = None;
    for r in RADII {
        match contour_taylor(s, chi, r, k_max, policy) {
            Ok(c) => return Ok(c),
            Err(e @ Error::RetrySmallerRadius { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap())
}

/// Signed zero ordinates used by the zero-side sum of the explicit formula.
/// Real characters (and zeta) have spectra symmetric about the real axis, so
/// a positives-only list is mirrored; other characters must supply a list
/// already carrying both signs.
fn signed_ordinates(zeros: &ZeroList, chi: &DirichletCharacter) -> Result<Vec<f64>> {
    let ords = zeros.ordinates();
    let has_negative = ords.first().is_some_and(|&g| g < 0.0);
    if has_negative {
        return Ok(ords.to_vec());
    }
    if chi.modulus() == 1 || chi.is_real() {
        let mut all = Vec::with_capacity(2 * ords.len());
        all.extend(ords.iter().map(|&g| -g));
        all.extend_from_slice(ords);
        Ok(all)
    } else {
        Err(Error::domain(format!(
            "zero list `{}` must carry both signs for a complex character",
            zeros.label
        )))
    }
}

/// sum over zeros of x^{rho - s}/(rho - s)^2 with rho = 1/2 + i gamma,
/// optionally excluding ordinates within 1e-6 of `exclude` (the s-at-a-zero
/// regularization). Terms are accumulated smallest-magnitude-first.
fn zero_side_sum(
    ordinates: &[f64],
    s: Complex64,
    x: f64,
    exclude: Option<f64>,
) -> (Complex64, usize) {
    let ln_x = x.ln();
    let amp = ((0.5 - s.re) * ln_x).exp();
    let mut terms: Vec<Complex64> = ordinates
        .iter()
        .filter(|&&g| exclude.map_or(true, |t| (g - t).abs() > 1e-6))
        .map(|&g| {
            let d = Complex64::new(0.5 - s.re, g - s.im);
            amp * cis((g - s.im) * ln_x) / (d * d)
        })
        .collect();
    let n = terms.len();
    terms.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap());
    (compensated_sum(terms, Compensation::Kahan), n)
}

fn zero_tail_bound(zeros: &ZeroList, s: Complex64, x: f64) -> f64 {
    let t_max = zeros.t_max().max(TWO_PI);
    let gap = (t_max - s.im.abs()).max(1.0);
    ((0.5 - s.re) * x.ln()).exp() * 2.0 * (t_max / TWO_PI).ln() / (TWO_PI * gap)
}

/// sum_{k} x^{-2k-kappa-s}/(2k+kappa+s)^2 for k = k0..=K.
fn trivial_zero_sum(s: Complex64, x: f64, kappa: u8, k0: usize, k_terms: usize) -> Complex64 {
    let ln_x = x.ln();
    let mut acc = Complex64::new(0.0, 0.0);
    for k in (k0..=k_terms).rev() {
        let shift = (2 * k) as f64 + kappa as f64;
        let d = s + shift;
        acc += (-d * ln_x).exp() / (d * d);
    }
    acc
}

/// Truncated right-hand side of the explicit formula for Psi(x;s,chi)
/// (non-principal), or for Psi(x;s,1) with the prime-power correction when
/// chi is principal. When s sits on a zero of L(s,chi) of order m, the
/// regularized variant with the -(m/2) log x leading term is selected
/// automatically.
pub fn psi_explicit_rhs(
    x: f64,
    s: Complex64,
    chi: &DirichletCharacter,
    zeros: &ZeroList,
    k_trivial: usize,
    policy: &PrecisionPolicy,
) -> Result<SumResult> {
    if !(x > 1.0) {
        return Err(Error::domain("psi_explicit_rhs requires x > 1"));
    }
    let ln_x = x.ln();
    let kappa_star = if chi.is_principal() {
        0
    } else {
        crate::characters::conductor(chi)?.1.kappa()
    };

    // order of L at s, when s is on the critical line
    let m_s = if (s.re - 0.5).abs() < 1e-9 {
        let probe = if chi.is_principal() { zeta_character() } else { chi.clone() };
        order_at(&probe, s.im, policy)?
    } else {
        0
    };

    if chi.is_principal() {
        // Psi(x;s,1) from the zeta explicit formula, plus the p | q correction
        let zchi = zeta_character();
        let main = {
            let one_minus_s = 1.0 - s;
            ((one_minus_s) * ln_x).exp() / (one_minus_s * one_minus_s * ln_x)
        };
        let (ords, lead, reg1, reg2) = regularized_log_derivs(&zchi, s, m_s, zeros, policy)?;
        let (zsum, zn) = zero_side_sum(&ords, s, x, if m_s > 0 { Some(s.im) } else { None });
        let trivial = trivial_zero_sum(s, x, 0, 1, k_trivial);
        let mut value = main + lead * ln_x - reg1 - reg2 / ln_x - zsum / ln_x - trivial / ln_x;
        // principal character mod q: subtract sum_{p|q} log p/(p^s - 1)
        if chi.modulus() > 1 {
            for &(p, _) in &factorize(chi.modulus())?.factors {
                let pf = p as f64;
                value -= pf.ln() / ((s * pf.ln()).exp() - 1.0);
            }
        }
        return Ok(SumResult {
            value,
            terms_used: zn + k_trivial,
            truncation_tail_bound: zero_tail_bound(zeros, s, x) / ln_x,
            compensation: Compensation::Kahan,
        });
    }

    let (ords, lead, reg1, reg2) = regularized_log_derivs(chi, s, m_s, zeros, policy)?;
    let (zsum, zn) = zero_side_sum(&ords, s, x, if m_s > 0 { Some(s.im) } else { None });
    let trivial = trivial_zero_sum(s, x, kappa_star, 0, k_trivial);
    let value = lead * ln_x - reg1 - reg2 / ln_x - zsum / ln_x - trivial / ln_x;
    Ok(SumResult {
        value,
        terms_used: zn + k_trivial + 1,
        truncation_tail_bound: zero_tail_bound(zeros, s, x) / ln_x,
        compensation: Compensation::Kahan,
    })
}

/// (signed ordinates, coefficient of log x, L'/L-regularized, (L'/L)'-regularized).
///
/// Away from zeros these are (.., 0, L'/L(s), (L'/L)'(s)); at a zero of
/// order m they are the limits with the m/(z-s) singularity removed and the
/// leading coefficient -m/2.
fn regularized_log_derivs(
    chi: &DirichletCharacter,
    s: Complex64,
    m_s: usize,
    zeros: &ZeroList,
    policy: &PrecisionPolicy,
) -> Result<(Vec<f64>, Complex64, Complex64, Complex64)> {
    let ords = signed_ordinates(zeros, chi)?;
    if m_s == 0 {
        let c = taylor_with_retry(s, chi, 2, policy)?;
        let ld = c[1] / c[0];
        let ldp = 2.0 * c[2] / c[0] - ld * ld;
        Ok((ords, Complex64::new(0.0, 0.0), ld, ldp))
    } else {
        // L = c_m w^m (1 + b1 w + b2 w^2 + ...):
        //   lim [L'/L - m/w]        = b1
        //   lim [(L'/L)' + m/w^2]   = 2 b2 - b1^2
        let c = taylor_with_retry(s, chi, m_s + 2, policy)?;
        let b1 = c[m_s + 1] / c[m_s];
        let b2 = c[m_s + 2] / c[m_s];
        Ok((
            ords,
            Complex64::new(-(m_s as f64) / 2.0, 0.0),
            b1,
            2.0 * b2 - b1 * b1,
        ))
    }
}

/// Main-term pair of the shifted-sum asymptotics for rational phase a/q:
/// the x-dependent prediction and the coefficient of the divergent log x
/// term (a weighted sum of zero orders over the dual group).
#[derive(Debug, Clone, Copy)]
pub struct MainTermPrediction {
    pub z_prediction: Complex64,
    pub divergent_coeff: Complex64,
}

pub fn predict_main_terms(
    x: f64,
    t: f64,
    phase: RationalPhase,
    orders: &[(DirichletCharacter, usize)],
) -> Result<MainTermPrediction> {
    let q = phase.denom();
    let a = phase.numer();
    let sqrt_2pi = (TWO_PI).sqrt();
    let mu = mobius(q)? as f64;
    let phi = totient(q)? as f64;
    let half_minus_it = Complex64::new(0.5, -t);
    let x_pow = (half_minus_it * x.ln()).exp(); // x^{1/2 - it}
    let z_prediction =
        -e_pi_i_4() * mu / (sqrt_2pi * phi) / (half_minus_it * half_minus_it) * x_pow / x.ln();
    let mut weighted = Complex64::new(0.0, 0.0);
    for (chi, m) in orders {
        if chi.modulus() != q {
            return Err(Error::domain("order map must be over characters mod q"));
        }
        let tau = gauss_sum(chi).value;
        weighted += tau.conj() * chi.eval(a as i64) * (*m as f64);
    }
    let divergent_coeff = e_pi_i_4() / (2.0 * sqrt_2pi * phi) * weighted;
    Ok(MainTermPrediction {
        z_prediction,
        divergent_coeff,
    })
}

/// Coefficient of log x in the twisted-sum divergence at a zero of order m:
/// e^{i pi/4} conj(tau(chi)) m / (2 sqrt(2 pi)).
pub fn predict_twisted_coeff(chi: &DirichletCharacter, m: usize) -> Result<Complex64> {
    let tau = gauss_sum(chi).value;
    if tau.norm() < 1e-12 {
        return Err(Error::VanishingGaussSum {
            chi: chi.label(),
        });
    }
    Ok(e_pi_i_4() * tau.conj() * (m as f64) / (2.0 * TWO_PI.sqrt()))
}

/// Principal-character main term: -e^{i pi/4} mu(q)/sqrt(2 pi)
/// (1/2-it)^{-2} x^{1/2-it}/log x.
pub fn predict_principal_main(x: f64, t: f64, q: u64) -> Result<Complex64> {
    let mu = mobius(q)? as f64;
    let half_minus_it = Complex64::new(0.5, -t);
    let x_pow = (half_minus_it * x.ln()).exp();
    Ok(-e_pi_i_4() * mu / TWO_PI.sqrt() / (half_minus_it * half_minus_it) * x_pow / x.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sieve_lambda;
    use crate::characters::{build_group, character_from_label, enumerate_characters};
    use crate::lfunc::find_zero_ordinates;
    use crate::sums::psi_chi_sum;

    fn p() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    #[test]
    fn prediction_t0_q1() {
        // main term -e^{i pi/4} 4 sqrt(x) / (sqrt(2 pi) log x)
        let x = 100.0;
        let pred = predict_main_terms(x, 0.0, RationalPhase::new(1, 1).unwrap(), &[]).unwrap();
        let expect = -e_pi_i_4() * 4.0 * x.sqrt() / (TWO_PI.sqrt() * x.ln());
        assert!((pred.z_prediction - expect).norm() < 1e-12);
    }

    #[test]
    fn prediction_q4_vanishes() {
        let pred = predict_main_terms(50.0, 0.0, RationalPhase::new(1, 4).unwrap(), &[]).unwrap();
        assert_eq!(pred.z_prediction.norm(), 0.0);
    }

    #[test]
    fn twisted_slope_coefficient_mod5() {
        let chi = character_from_label("5.2").unwrap();
        let coeff = predict_twisted_coeff(&chi, 1).unwrap();
        let expect = 5f64.sqrt() / (2.0 * TWO_PI.sqrt());
        assert!((coeff.norm() - expect).abs() < 1e-12);
        assert!((expect - 0.4460).abs() < 1e-4);
    }

    #[test]
    fn vanishing_tau_is_an_error() {
        // principal mod 4 has tau = mu(4) = 0
        let g4 = build_group(4).unwrap();
        let chi0 = crate::characters::character_by_position(&g4, 0).unwrap();
        assert!(matches!(
            predict_twisted_coeff(&chi0, 1),
            Err(Error::VanishingGaussSum { .. })
        ));
    }

    #[test]
    fn divergent_coeff_orthogonality() {
        // with unit orders for all characters, the weighted sum collapses by
        // the twisted-exponential identity: sum_chi conj(tau) chi(a) = phi(q) e(-a/q)
        let q = 5u64;
        let group = build_group(q).unwrap();
        let orders: Vec<_> = enumerate_characters(&group)
            .unwrap()
            .into_iter()
            .map(|c| (c, 1usize))
            .collect();
        let pred =
            predict_main_terms(50.0, 0.0, RationalPhase::new(2, 5).unwrap(), &orders).unwrap();
        let expect = e_pi_i_4() / (2.0 * TWO_PI.sqrt()) * cis(-TWO_PI * 2.0 / 5.0);
        assert!((pred.divergent_coeff - expect).norm() < 1e-10);
    }

    #[test]
    fn rhs_matches_prime_sum_at_two() {
        // Re s = 2: the RHS is dominated by -L'/L(2,chi)
        let chi = character_from_label("5.2").unwrap();
        let zeros = find_zero_ordinates(&chi, 30.0, &p()).unwrap();
        let s = Complex64::new(2.0, 0.0);
        let x = 1000.0;
        let rhs = psi_explicit_rhs(x, s, &chi, &zeros, 50, &p()).unwrap();
        let table = sieve_lambda(1000).unwrap();
        let lhs = psi_chi_sum(&table, x, s, &chi).unwrap();
        assert!(
            (lhs.value - rhs.value).norm() < 0.05,
            "lhs={} rhs={}",
            lhs.value,
            rhs.value
        );
    }

    #[test]
    fn k_sensitivity_is_geometric() {
        let chi = character_from_label("5.2").unwrap();
        let zeros = find_zero_ordinates(&chi, 30.0, &p()).unwrap();
        let s = Complex64::new(0.5, 3.0);
        let x = 1000.0;
        let r10 = psi_explicit_rhs(x, s, &chi, &zeros, 10, &p()).unwrap();
        let r50 = psi_explicit_rhs(x, s, &chi, &zeros, 50, &p()).unwrap();
        assert!((r10.value - r50.value).norm() < x.powf(-2.0));
    }
}
