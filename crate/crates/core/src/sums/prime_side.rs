//! Prime-side mollified sums over Lambda(n).

use num_complex::Complex64;

use super::summation::compensated_sum;
use super::{Alpha, Compensation, SumParams, SumResult};
use crate::arith::PrimePowerTable;
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

fn cis(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

/// Psi(x;s,alpha) = sum_{n<=x} Lambda(n) e(-alpha n) n^{-s} (1 - log n/log x).
///
/// For rational alpha = a/q the phase is reduced through the exact residue
/// a n mod q, so no drift accumulates over long ranges.
pub fn psi_sum(table: &PrimePowerTable, params: &SumParams) -> Result<SumResult> {
    let x = params.x;
    if (table.bound() as f64) < x.floor() {
        return Err(Error::Coverage {
            label: "Lambda table".into(),
            have: table.bound() as f64,
            need: x,
        });
    }
    let s = params.s;
    let ln_x = x.ln();
    let entries = table.up_to(x);
    let value = match params.alpha {
        Alpha::Rational(phase) => {
            let q = phase.denom();
            let a = phase.numer();
            // e(-j/q) for j = 0..q
            let roots: Vec<Complex64> = (0..q)
                .map(|j| cis(-TWO_PI * j as f64 / q as f64))
                .collect();
            compensated_sum(
                entries.iter().map(|&(n, lam)| {
                    let ln_n = (n as f64).ln();
                    let r = (a * (n % q)) % q;
                    let amp = lam * (-s.re * ln_n).exp() * (1.0 - ln_n / ln_x);
                    amp * roots[r as usize] * cis(-s.im * ln_n)
                }),
                Compensation::Kahan,
            )
        }
        Alpha::Real(alpha) => compensated_sum(
            entries.iter().map(|&(n, lam)| {
                let ln_n = (n as f64).ln();
                let amp = lam * (-s.re * ln_n).exp() * (1.0 - ln_n / ln_x);
                amp * cis(-TWO_PI * alpha * n as f64 - s.im * ln_n)
            }),
            Compensation::Kahan,
        ),
    };
    Ok(SumResult {
        value,
        terms_used: entries.len(),
        truncation_tail_bound: 0.0,
        compensation: Compensation::Kahan,
    })
}

/// The character-twisted aggregate sum_{a=1}^{q} conj(chi)(a) Psi(x;s,a/q).
pub fn psi_twisted_sum(
    table: &PrimePowerTable,
    x: f64,
    s: Complex64,
    chi: &DirichletCharacter,
) -> Result<SumResult> {
    let q = chi.modulus();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut terms = 0;
    for a in 1..=q {
        let w = chi.eval(a as i64).conj();
        if w == Complex64::new(0.0, 0.0) {
            continue;
        }
        let phase = super::RationalPhase::new(a, q).expect("coprime by nonzero value");
        let params = SumParams::new(x, s.im, Alpha::Rational(phase), s)?;
        let r = psi_sum(table, &params)?;
        acc += w * r.value;
        terms += r.terms_used;
    }
    Ok(SumResult {
        value: acc,
        terms_used: terms,
        truncation_tail_bound: 0.0,
        compensation: Compensation::Kahan,
    })
}

/// Psi(x;s,chi) = sum_{n<=x} Lambda(n) chi(n) n^{-s} (1 - log n/log x).
pub fn psi_chi_sum(
    table: &PrimePowerTable,
    x: f64,
    s: Complex64,
    chi: &DirichletCharacter,
) -> Result<SumResult> {
    if (table.bound() as f64) < x.floor() {
        return Err(Error::Coverage {
            label: "Lambda table".into(),
            have: table.bound() as f64,
            need: x,
        });
    }
    let ln_x = x.ln();
    let entries = table.up_to(x);
    let value = compensated_sum(
        entries.iter().map(|&(n, lam)| {
            let w = chi.eval(n as i64);
            if w == Complex64::new(0.0, 0.0) {
                return Complex64::new(0.0, 0.0);
            }
            let ln_n = (n as f64).ln();
            let amp = lam * (-s.re * ln_n).exp() * (1.0 - ln_n / ln_x);
            amp * w * cis(-s.im * ln_n)
        }),
        Compensation::Kahan,
    );
    Ok(SumResult {
        value,
        terms_used: entries.len(),
        truncation_tail_bound: 0.0,
        compensation: Compensation::Kahan,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sieve_lambda;
    use crate::sums::RationalPhase;

    #[test]
    fn x_three_single_term() {
        // only n = 2 contributes: the mollifier kills n = 3
        let table = sieve_lambda(10).unwrap();
        let s = Complex64::new(0.7, -1.3);
        let alpha = 0.37;
        let p = SumParams::new(3.0, 0.0, Alpha::Real(alpha), s).unwrap();
        let r = psi_sum(&table, &p).unwrap();
        let expect = 2f64.ln()
            * cis(-TWO_PI * alpha * 2.0)
            * (-s * 2f64.ln()).exp()
            * (1.0 - 2f64.ln() / 3f64.ln());
        assert!((r.value - expect).norm() < 1e-14);
    }

    #[test]
    fn integer_alpha_all_phases_one() {
        let table = sieve_lambda(10).unwrap();
        let s = Complex64::new(0.5, 2.0);
        let p = SumParams::new(
            10.0,
            0.0,
            Alpha::Rational(RationalPhase::new(1, 1).unwrap()),
            s,
        )
        .unwrap();
        let r = psi_sum(&table, &p).unwrap();
        let mut direct = Complex64::new(0.0, 0.0);
        for &(n, lam) in table.entries() {
            let nf = n as f64;
            direct += lam * (-s * nf.ln()).exp() * (1.0 - nf.ln() / 10f64.ln());
        }
        assert!((r.value - direct).norm() < 1e-13);
    }

    #[test]
    fn rational_phase_matches_naive_loop() {
        // unoptimized re-summation oracle at x = 10^4, s = 1/2, alpha = 1/5
        let table = sieve_lambda(10_000).unwrap();
        let s = Complex64::new(0.5, 0.0);
        let p = SumParams::new(
            1.0e4,
            0.0,
            Alpha::Rational(RationalPhase::new(1, 5).unwrap()),
            s,
        )
        .unwrap();
        let r = psi_sum(&table, &p).unwrap();
        let mut naive = Complex64::new(0.0, 0.0);
        for n in 2..=10_000u64 {
            let lam = table.lambda(n);
            if lam == 0.0 {
                continue;
            }
            let nf = n as f64;
            let phase = Complex64::new(0.0, -TWO_PI * (nf / 5.0)).exp();
            naive += lam * phase * nf.powf(-0.5) * (1.0 - nf.ln() / 1.0e4f64.ln());
        }
        assert!(
            (r.value - naive).norm() < 1e-10,
            "diff = {:e}",
            (r.value - naive).norm()
        );
    }

    #[test]
    fn table_too_small() {
        let table = sieve_lambda(10).unwrap();
        let p = SumParams::new(
            100.0,
            0.0,
            Alpha::Real(0.5),
            Complex64::new(0.5, 0.0),
        )
        .unwrap();
        assert!(matches!(psi_sum(&table, &p), Err(Error::Coverage { .. })));
    }

    #[test]
    fn chi_sum_mod1_is_untwisted() {
        let table = sieve_lambda(1000).unwrap();
        let s = Complex64::new(0.5, 3.0);
        let chi1 = crate::lfunc::zeta_character();
        let via_chi = psi_chi_sum(&table, 1000.0, s, &chi1).unwrap();
        let p = SumParams::new(
            1000.0,
            0.0,
            Alpha::Rational(RationalPhase::new(1, 1).unwrap()),
            s,
        )
        .unwrap();
        let via_alpha = psi_sum(&table, &p).unwrap();
        assert!((via_chi.value - via_alpha.value).norm() < 1e-12);
    }

    #[test]
    fn chi_sum_approximates_log_derivative_at_two() {
        // x = 10^3, s = 2: Psi(x;2,chi) ~ -L'/L(2,chi) with rapidly decaying
        // corrections
        let table = sieve_lambda(1000).unwrap();
        let chi = crate::characters::character_from_label("5.2").unwrap();
        let s = Complex64::new(2.0, 0.0);
        let psi = psi_chi_sum(&table, 1000.0, s, &chi).unwrap();
        let ld = crate::lfunc::log_deriv_l(s, &chi, 0.1, &crate::specials::PrecisionPolicy::default())
            .unwrap();
        assert!(
            (psi.value + ld).norm() < 0.05,
            "psi={} -L'/L={}",
            psi.value,
            -ld
        );
    }
}
