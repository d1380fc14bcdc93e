//! Sums over zero ordinates: the windowed oscillatory sum Z(x;t,alpha), its
//! character twists, Fujii's finite sum, and the Linnik-Sprindzuk sum.

use num_complex::Complex64;

use super::summation::{compensated_sum, KahanComplex};
use super::{Compensation, RationalPhase, SumParams, SumResult};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::zerodata::ZeroList;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
const DEGENERATE_TOL: f64 = 1e-9;

fn cis(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

/// Z(x;t,alpha): over ordinates g with 0 < g - t <= 2 pi alpha x, sum
/// (g-t)^{-1/2} e((g-t)/2pi log((g-t)/(2 pi alpha e))) (1 - log((g-t)/(2 pi alpha))/log x).
pub fn weighted_zero_sum(zeros: &ZeroList, params: &SumParams) -> Result<SumResult> {
    weighted_zero_sum_with(zeros, params, Compensation::Kahan)
}

pub fn weighted_zero_sum_with(
    zeros: &ZeroList,
    params: &SumParams,
    comp: Compensation,
) -> Result<SumResult> {
    let x = params.x;
    let t = params.t;
    let alpha = params.alpha.value();
    if !(x > std::f64::consts::E) {
        return Err(Error::domain(format!("weighted_zero_sum requires x > e, got {x}")));
    }
    let need = t + TWO_PI * alpha * x;
    if zeros.t_max() < need {
        return Err(Error::Coverage {
            label: zeros.label.clone(),
            have: zeros.t_max(),
            need,
        });
    }
    if let Some(g) = zeros.nearest(t) {
        if (g - t).abs() <= DEGENERATE_TOL {
            return Err(Error::DegenerateShift {
                t,
                ordinate: g,
                tol: DEGENERATE_TOL,
            });
        }
    }
    let ln_x = x.ln();
    let window = zeros.slice_range(t, need);
    let value = compensated_sum(
        window.iter().map(|&g| {
            let u = g - t;
            let lr = (u / (TWO_PI * alpha)).ln();
            // e(u/2pi log(u/(2 pi alpha e))) = cis(u (lr - 1))
            let mollifier = 1.0 - lr / ln_x;
            mollifier / u.sqrt() * cis(u * (lr - 1.0))
        }),
        comp,
    );
    Ok(SumResult {
        value,
        terms_used: window.len(),
        truncation_tail_bound: 0.0,
        compensation: comp,
    })
}

/// The character-twisted aggregate sum_{a=1}^{q} conj(chi)(a) Z(x;t,a/q),
/// with the per-a pieces retrievable.
#[derive(Debug, Clone)]
pub struct TwistedSumResult {
    pub total: SumResult,
    pub per_a: Vec<(u64, SumResult)>,
}

pub fn twisted_zero_sum(
    zeros: &ZeroList,
    x: f64,
    t: f64,
    chi: &DirichletCharacter,
) -> Result<TwistedSumResult> {
    let q = chi.modulus();
    // the largest coprime a needs the tallest coverage; check it first so the
    // error names the worst case
    let worst_a = (1..=q).rev().find(|&a| chi.eval(a as i64) != Complex64::new(0.0, 0.0));
    if let Some(a) = worst_a {
        let need = t + TWO_PI * (a as f64 / q as f64) * x;
        if zeros.t_max() < need {
            return Err(Error::Coverage {
                label: format!("{} (twist a={a}/{q})", zeros.label),
                have: zeros.t_max(),
                need,
            });
        }
    }
    let mut per_a = Vec::new();
    let mut acc = KahanComplex::default();
    let mut terms = 0;
    for a in 1..=q {
        let w = chi.eval(a as i64).conj();
        if w == Complex64::new(0.0, 0.0) {
            continue;
        }
        let phase = RationalPhase::new(a, q).expect("coprime by nonzero character value");
        let params = SumParams::new(x, t, super::Alpha::Rational(phase), Complex64::new(0.5, t))?;
        let z = weighted_zero_sum(zeros, &params)?;
        acc.add(w * z.value);
        terms += z.terms_used;
        per_a.push((a, z));
    }
    Ok(TwistedSumResult {
        total: SumResult {
            value: acc.value(),
            terms_used: terms,
            truncation_tail_bound: 0.0,
            compensation: Compensation::Kahan,
        },
        per_a,
    })
}

/// Fujii's finite sum: sum_{0 < g <= x} e(g/2pi log(g/(2 pi (a/q) e))).
pub fn fujii_sum(zeros: &ZeroList, x: f64, phase: RationalPhase) -> Result<SumResult> {
    if zeros.t_max() < x {
        return Err(Error::Coverage {
            label: zeros.label.clone(),
            have: zeros.t_max(),
            need: x,
        });
    }
    let alpha = phase.value();
    let window = zeros.slice_range(0.0, x);
    let value = compensated_sum(
        window.iter().map(|&g| cis(g * ((g / (TWO_PI * alpha)).ln() - 1.0))),
        Compensation::Kahan,
    );
    Ok(SumResult {
        value,
        terms_used: window.len(),
        truncation_tail_bound: 0.0,
        compensation: Compensation::Kahan,
    })
}

/// Per-ordinate term of the Linnik-Sprindzuk sum, assembled as one exponent
/// then a single cexp: e(g/2pi log|g|/e) e^{-pi |g|/2} w^{-1/2 - i g} with
/// w = 1/x + 2 pi i a/q.
fn linnik_term(g: f64, ln_w: f64, arg_w: f64) -> Complex64 {
    let re = g * arg_w - std::f64::consts::FRAC_PI_2 * g.abs() - 0.5 * ln_w;
    let im = g * (g.abs().ln() - 1.0) - 0.5 * arg_w - g * ln_w;
    Complex64::new(re, im).exp()
}

/// The Linnik-Sprindzuk sum over all zeta ordinates (both signs, via the
/// symmetry of the zeta spectrum), truncated when the estimated remaining
/// tail drops below `tol`.
pub fn linnik_sprindzuk_sum(
    zeros: &ZeroList,
    x: f64,
    phase: RationalPhase,
    tol: f64,
) -> Result<SumResult> {
    if !(tol > 0.0) {
        return Err(Error::domain("linnik_sprindzuk_sum requires tol > 0"));
    }
    if !(x > 1.0) {
        return Err(Error::domain("linnik_sprindzuk_sum requires x > 1"));
    }
    if 2 * phase.numer() > phase.denom() && phase.denom() > 1 {
        return Err(Error::domain(format!(
            "linnik_sprindzuk_sum requires 1 <= a <= q/2, got {}/{}",
            phase.numer(),
            phase.denom()
        )));
    }
    let w_re = 1.0 / x;
    let w_im = TWO_PI * phase.value();
    let ln_w = 0.5 * (w_re * w_re + w_im * w_im).ln();
    let arg_w = w_im.atan2(w_re);
    let decay = std::f64::consts::FRAC_PI_2 - arg_w; // per-unit-height damping

    // negative ordinates (mirrored): doubly fast decay e^{-g(pi/2 + arg w)}
    let mut acc = KahanComplex::default();
    let mut terms = 0usize;
    for &g in zeros.ordinates() {
        if g <= 0.0 {
            continue;
        }
        let term = linnik_term(-g, ln_w, arg_w);
        if term.norm() < tol * 1e-6 {
            break;
        }
        acc.add(term);
        terms += 1;
    }
    // positive ordinates, truncated by the estimated remaining tail
    let mut tail_bound = f64::INFINITY;
    let mut converged = false;
    for &g in zeros.ordinates() {
        if g <= 0.0 {
            continue;
        }
        let term = linnik_term(g, ln_w, arg_w);
        acc.add(term);
        terms += 1;
        // density of ordinates near height g is ~ log(g/2pi)/2pi
        let density = (g / TWO_PI).ln().max(0.1) / TWO_PI;
        tail_bound = term.norm() * density / decay;
        if tail_bound < tol {
            converged = true;
            break;
        }
    }
    if !converged {
        // required height: solve e^{-decay g} density / decay ~ tol
        let g0 = zeros.t_max().max(TWO_PI);
        let density = (g0 / TWO_PI).ln().max(0.1) / TWO_PI;
        let need = (density / (decay * tol)).ln().max(1.0) / decay + 0.5 * ln_w.abs() / decay;
        return Err(Error::Coverage {
            label: zeros.label.clone(),
            have: zeros.t_max(),
            need,
        });
    }
    Ok(SumResult {
        value: acc.value(),
        terms_used: terms,
        truncation_tail_bound: tail_bound,
        compensation: Compensation::Kahan,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sums::Alpha;
    use crate::zerodata::ZeroSource;

    fn synthetic(label: &str, ords: Vec<f64>) -> ZeroList {
        ZeroList::new(label, ords, ZeroSource::Computed)
    }

    fn params(x: f64, t: f64, alpha: Alpha) -> SumParams {
        SumParams::new(x, t, alpha, Complex64::new(0.5, t)).unwrap()
    }

    #[test]
    fn empty_window_is_zero() {
        // 2 pi alpha x < first ordinate - t
        let z = synthetic("zeta", vec![100.0, 200.0]);
        let p = params(3.0, 0.0, Alpha::Real(1.0)); // window height ~18.8
        let r = weighted_zero_sum(&z, &p).unwrap();
        assert_eq!(r.terms_used, 0);
        assert_eq!(r.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn single_zero_at_log_free_point() {
        // g - t = 2 pi alpha e: the oscillation vanishes and the mollifier is
        // 1 - 1/log x
        let alpha = 0.7;
        let u = TWO_PI * alpha * std::f64::consts::E;
        let t = 3.0;
        let x = 50.0;
        let z = synthetic("zeta", vec![t + u, 1.0e9]);
        // t_max huge so coverage holds
        let p = params(x, t, Alpha::Real(alpha));
        let r = weighted_zero_sum(&z, &p).unwrap();
        let expect = (1.0 - 1.0 / x.ln()) / u.sqrt();
        assert!((r.value - Complex64::new(expect, 0.0)).norm() < 1e-12);
        assert_eq!(r.terms_used, 1);
    }

    #[test]
    fn coverage_error_reports_requirement() {
        let z = synthetic("zeta", vec![14.13]);
        let p = params(100.0, 0.0, Alpha::Real(1.0));
        match weighted_zero_sum(&z, &p) {
            Err(Error::Coverage { have, need, .. }) => {
                assert_eq!(have, 14.13);
                assert!((need - TWO_PI * 100.0).abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_shift_rejected() {
        let z = synthetic("zeta", vec![14.134725, 1.0e9]);
        let p = params(10.0, 14.134725, Alpha::Real(0.1));
        assert!(matches!(
            weighted_zero_sum(&z, &p),
            Err(Error::DegenerateShift { .. })
        ));
    }

    #[test]
    fn x_must_exceed_e() {
        let z = synthetic("zeta", vec![1.0e9]);
        let p = params(2.0, 0.0, Alpha::Real(1.0));
        assert!(weighted_zero_sum(&z, &p).is_err());
    }

    #[test]
    fn boundary_crossing_changes_terms_by_multiplicity() {
        // double zero just below the window edge; nudging x across it adds 2
        let g = 30.0;
        let alpha = 1.0;
        let z = synthetic("zeta", vec![5.0, g, g, 1.0e9]);
        let x_lo = (g - 1e-6) / TWO_PI;
        let x_hi = (g + 1e-6) / TWO_PI;
        let lo = weighted_zero_sum(&z, &params(x_lo, 0.0, Alpha::Real(alpha))).unwrap();
        let hi = weighted_zero_sum(&z, &params(x_hi, 0.0, Alpha::Real(alpha))).unwrap();
        assert_eq!(hi.terms_used - lo.terms_used, 2);
    }

    #[test]
    fn twisted_linearity_and_principal_mod_2() {
        let z = synthetic("zeta", (1..2000).map(|i| 7.1 + i as f64 * 0.83).collect());
        let x = 20.0;
        let t = 1.5;
        // principal mod 2: only a=1 survives, so the twist reduces to alpha = 1/2
        let g2 = crate::characters::build_group(2).unwrap();
        let chi0 = crate::characters::character_by_position(&g2, 0).unwrap();
        let tw = twisted_zero_sum(&z, x, t, &chi0).unwrap();
        let direct = weighted_zero_sum(
            &z,
            &params(x, t, Alpha::Rational(RationalPhase::new(1, 2).unwrap())),
        )
        .unwrap();
        assert!((tw.total.value - direct.value).norm() < 1e-14);

        // linearity against the per-a pieces
        let chi = crate::characters::character_from_label("5.2").unwrap();
        let tw5 = twisted_zero_sum(&z, x, t, &chi).unwrap();
        let mut manual = Complex64::new(0.0, 0.0);
        for (a, r) in &tw5.per_a {
            manual += chi.eval(*a as i64).conj() * r.value;
        }
        assert!((tw5.total.value - manual).norm() < 1e-12);
    }

    #[test]
    fn fujii_empty_below_first_zero() {
        let z = synthetic("zeta", vec![14.134725, 21.022, 30.0]);
        let r = fujii_sum(&z, 14.0, RationalPhase::new(1, 3).unwrap()).unwrap();
        assert_eq!(r.terms_used, 0);
        assert_eq!(r.value.norm(), 0.0);
    }

    #[test]
    fn linnik_single_synthetic_matches_direct() {
        let g = 20.0;
        let z = synthetic("zeta", vec![g]);
        let phase = RationalPhase::new(1, 2).unwrap();
        let x = 10.0;
        // generous tol so the single available term suffices
        let r = linnik_sprindzuk_sum(&z, x, phase, 5.0).unwrap();
        // direct evaluation from elementary complex arithmetic
        let w = Complex64::new(1.0 / x, TWO_PI * 0.5);
        let direct = cis(g * (g.ln() - 1.0))
            * (-std::f64::consts::FRAC_PI_2 * g).exp()
            * w.powc(Complex64::new(-0.5, -g))
            + cis(-g * (g.ln() - 1.0))
                * (-std::f64::consts::FRAC_PI_2 * g).exp()
                * w.powc(Complex64::new(-0.5, g));
        assert!(
            (r.value - direct).norm() < 1e-10,
            "ours={} direct={direct}",
            r.value
        );
    }

    #[test]
    fn linnik_tol_and_range_validation() {
        let z = synthetic("zeta", vec![14.13]);
        let phase = RationalPhase::new(1, 3).unwrap();
        assert!(linnik_sprindzuk_sum(&z, 50.0, phase, 0.0).is_err());
        assert!(linnik_sprindzuk_sum(&z, 50.0, RationalPhase::new(2, 3).unwrap(), 1.0).is_err());
        // coverage error carries a required height
        match linnik_sprindzuk_sum(&z, 50.0, phase, 1e-6) {
            Err(Error::Coverage { need, .. }) => assert!(need > 100.0),
            other => panic!("{other:?}"),
        }
    }
}
