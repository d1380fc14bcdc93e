//! Dirichlet L-functions in the critical strip: evaluation through Hurwitz
//! zeta, logarithmic derivatives by Cauchy contour differentiation, zero
//! counting by the argument principle, and zero localization by bisection on
//! rectangle counts.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::specials::{hurwitz_zeta, PrecisionPolicy};
use crate::zerodata::{ZeroList, ZeroSource};

/// An L-function value with a coarse error estimate.
#[derive(Debug, Clone)]
pub struct LValue {
    pub s: Complex64,
    pub chi_label: String,
    pub value: Complex64,
    pub est_abs_err: f64,
}

/// A localized zero with its argument-principle order.
#[derive(Debug, Clone)]
pub struct ZeroMatch {
    pub ordinate: f64,
    pub order: usize,
    pub chi_label: String,
    pub localization_width: f64,
}

/// The principal character mod 1; L(s, .) is then the Riemann zeta function.
pub fn zeta_character() -> DirichletCharacter {
    let group = crate::characters::build_group(1).expect("modulus 1");
    crate::characters::character_by_position(&group, 0).expect("principal")
}

/// Label used for zero lists: "zeta" for modulus 1, else "L/q.k".
pub fn l_label(chi: &DirichletCharacter) -> String {
    if chi.modulus() == 1 {
        "zeta".into()
    } else {
        format!("L/{}", chi.label())
    }
}

/// L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q).
pub fn dirichlet_l(
    s: Complex64,
    chi: &DirichletCharacter,
    policy: &PrecisionPolicy,
) -> Result<LValue> {
    if chi.is_principal() && (s - Complex64::new(1.0, 0.0)).norm() < 1e-10 {
        return Err(Error::Pole {
            function: "dirichlet_l",
            location: "s = 1".into(),
        });
    }
    let q = chi.modulus();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for a in 1..=q {
        let w = chi.eval(a as i64);
        if w == Complex64::new(0.0, 0.0) {
            continue;
        }
        let (z, e) = hurwitz_zeta(s, a as f64 / q as f64, policy)?;
        sum += w * z;
        err += e;
    }
    let scale = (-s * (q as f64).ln()).exp();
    Ok(LValue {
        s,
        chi_label: chi.label(),
        value: scale * sum,
        est_abs_err: err * scale.norm(),
    })
}

const CONTOUR_NODES: usize = 64;

/// Taylor coefficients c_0..c_{k_max} of L around s, from one trapezoidal
/// contour of radius `radius` (c_k = L^{(k)}(s)/k!).
///
/// The trapezoid rule on a circle recovers Fourier coefficients with
/// spectral accuracy. A zero sitting essentially on the circle shows up as a
/// deep dip of |L| along it and is reported as a retry-with-smaller-radius
/// error; a zero at the center is fine.
pub fn contour_taylor(
    s: Complex64,
    chi: &DirichletCharacter,
    radius: f64,
    k_max: usize,
    policy: &PrecisionPolicy,
) -> Result<Vec<Complex64>> {
    if chi.is_principal() && (s - Complex64::new(1.0, 0.0)).norm() <= radius + 0.02 {
        return Err(Error::RetrySmallerRadius {
            s: s.to_string(),
            radius,
        });
    }
    let mut vals = [Complex64::new(0.0, 0.0); CONTOUR_NODES];
    let mut min_abs = f64::INFINITY;
    let mut max_abs = 0.0f64;
    for (k, v) in vals.iter_mut().enumerate() {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / CONTOUR_NODES as f64;
        let z = s + radius * Complex64::new(theta.cos(), theta.sin());
        *v = dirichlet_l(z, chi, policy)?.value;
        min_abs = min_abs.min(v.norm());
        max_abs = max_abs.max(v.norm());
    }
    if min_abs < 1e-3 * max_abs {
        return Err(Error::RetrySmallerRadius {
            s: s.to_string(),
            radius,
        });
    }
    let mut coeffs = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let mut c = Complex64::new(0.0, 0.0);
        for (j, v) in vals.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * (j * k) as f64 / CONTOUR_NODES as f64;
            c += v * Complex64::new(theta.cos(), -theta.sin());
        }
        coeffs.push(c / CONTOUR_NODES as f64 / radius.powi(k as i32));
    }
    Ok(coeffs)
}

fn l_derivatives(
    s: Complex64,
    chi: &DirichletCharacter,
    radius: f64,
    policy: &PrecisionPolicy,
) -> Result<(Complex64, Complex64, Complex64)> {
    let c = contour_taylor(s, chi, radius, 2, policy)?;
    Ok((c[0], c[1], 2.0 * c[2]))
}

/// L'/L(s, chi) by contour differentiation.
pub fn log_deriv_l(
    s: Complex64,
    chi: &DirichletCharacter,
    radius: f64,
    policy: &PrecisionPolicy,
) -> Result<Complex64> {
    let (l, l1, _) = l_derivatives(s, chi, radius, policy)?;
    Ok(l1 / l)
}

/// (L'/L)'(s, chi) = L''/L - (L'/L)^2.
pub fn log_deriv_l_prime(
    s: Complex64,
    chi: &DirichletCharacter,
    radius: f64,
    policy: &PrecisionPolicy,
) -> Result<Complex64> {
    let (l, l1, l2) = l_derivatives(s, chi, radius, policy)?;
    let ld = l1 / l;
    Ok(l2 / l - ld * ld)
}

// ---------------------------------------------------------------------------
// argument-principle zero counting
// ---------------------------------------------------------------------------

const MAX_WALK_DEPTH: usize = 48;

/// Accumulated argument change of L along the segment [z0, z1], adaptively
/// subdivided until each piece turns by less than pi/2.
fn walk_arg(
    chi: &DirichletCharacter,
    z0: Complex64,
    z1: Complex64,
    l0: Complex64,
    l1: Complex64,
    depth: usize,
    policy: &PrecisionPolicy,
) -> Result<f64> {
    let d = (l1 / l0).arg();
    if d.abs() < std::f64::consts::FRAC_PI_2 && (z1 - z0).norm() < 0.35 {
        return Ok(d);
    }
    if depth >= MAX_WALK_DEPTH {
        return Err(Error::BoundaryZero {
            t: 0.5 * (z0.im + z1.im),
            attempts: depth,
        });
    }
    let zm = 0.5 * (z0 + z1);
    let lm = dirichlet_l(zm, chi, policy)?.value;
    if lm.norm() < 1e-13 {
        return Err(Error::BoundaryZero {
            t: zm.im,
            attempts: depth,
        });
    }
    Ok(walk_arg(chi, z0, zm, l0, lm, depth + 1, policy)?
        + walk_arg(chi, zm, z1, lm, l1, depth + 1, policy)?)
}

fn winding_number(
    chi: &DirichletCharacter,
    corners: &[Complex64; 4],
    policy: &PrecisionPolicy,
) -> Result<i64> {
    let mut vals = Vec::with_capacity(4);
    for z in corners {
        let v = dirichlet_l(*z, chi, policy)?.value;
        if v.norm() < 1e-13 {
            return Err(Error::BoundaryZero {
                t: z.im,
                attempts: 0,
            });
        }
        vals.push(v);
    }
    let mut total = 0.0;
    for i in 0..4 {
        let j = (i + 1) % 4;
        total += walk_arg(chi, corners[i], corners[j], vals[i], vals[j], 0, policy)?;
    }
    let w = total / (2.0 * std::f64::consts::PI);
    let rounded = w.round();
    if (w - rounded).abs() > 0.25 {
        return Err(Error::domain(format!(
            "winding number {w} too far from an integer"
        )));
    }
    Ok(rounded as i64)
}

/// Zeros of L(s, chi) inside [1/2 - sigma_pad, 1/2 + sigma_pad] x [t_lo, t_hi],
/// counted with multiplicity by the argument principle. Edges sitting on a
/// zero are auto-perturbed outward by up to 1e-4, three attempts.
pub fn count_zeros_rect(
    chi: &DirichletCharacter,
    t_lo: f64,
    t_hi: f64,
    sigma_pad: f64,
    policy: &PrecisionPolicy,
) -> Result<usize> {
    if !(t_hi > t_lo) {
        return Err(Error::domain("count_zeros_rect requires t_hi > t_lo"));
    }
    if !(sigma_pad > 0.0 && sigma_pad < 0.5) {
        return Err(Error::domain("sigma_pad must lie in (0, 1/2)"));
    }
    let mut lo = t_lo;
    let mut hi = t_hi;
    let mut last_err = None;
    for attempt in 0..=3 {
        let corners = [
            Complex64::new(0.5 - sigma_pad, lo),
            Complex64::new(0.5 + sigma_pad, lo),
            Complex64::new(0.5 + sigma_pad, hi),
            Complex64::new(0.5 - sigma_pad, hi),
        ];
        match winding_number(chi, &corners, policy) {
            Ok(n) => return Ok(n.max(0) as usize),
            Err(e @ Error::BoundaryZero { .. }) => {
                last_err = Some(e);
                let d = 1e-4 * (attempt + 1) as f64 / 3.0;
                lo = t_lo - d;
                hi = t_hi + d;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or(Error::BoundaryZero {
        t: t_lo,
        attempts: 3,
    }))
}

/// Multiplicity of the zero of L(s, chi) at s = 1/2 + it (0 if no zero).
pub fn order_at(chi: &DirichletCharacter, t: f64, policy: &PrecisionPolicy) -> Result<usize> {
    count_zeros_rect(chi, t - 1e-4, t + 1e-4, 0.49, policy)
}

const LOCALIZATION_WIDTH: f64 = 1e-6;

/// Locate all zeros with ordinate in (t_lo, t_hi], each bisected down to
/// width 1e-6 on rectangle counts. Windows run in parallel and merge in
/// deterministic order.
pub fn locate_zeros_range(
    chi: &DirichletCharacter,
    t_lo: f64,
    t_hi: f64,
    policy: &PrecisionPolicy,
) -> Result<Vec<ZeroMatch>> {
    if t_hi.abs() > 1000.0 || t_lo.abs() > 1000.0 {
        return Err(Error::domain(
            "zero search is limited to |t| <= 1000; ingest a zero file beyond that",
        ));
    }
    // initial windows sized below the typical zero spacing
    let q = chi.modulus().max(1) as f64;
    let t_big = t_lo.abs().max(t_hi.abs()).max(10.0);
    let spacing =
        2.0 * std::f64::consts::PI / (q * (t_big + 10.0) / (2.0 * std::f64::consts::PI)).ln();
    let w = (0.45 * spacing).clamp(0.05, 0.5);
    let n_win = ((t_hi - t_lo) / w).ceil().max(1.0) as usize;
    let windows: Vec<(f64, f64)> = (0..n_win)
        .map(|i| {
            let a = t_lo + (t_hi - t_lo) * i as f64 / n_win as f64;
            let b = t_lo + (t_hi - t_lo) * (i + 1) as f64 / n_win as f64;
            (a, b)
        })
        .collect();
    let found: Result<Vec<Vec<ZeroMatch>>> = windows
        .par_iter()
        .map(|&(a, b)| locate_in_window(chi, a, b, policy))
        .collect();
    let mut out: Vec<ZeroMatch> = found?.into_iter().flatten().collect();
    out.sort_by(|x, y| x.ordinate.partial_cmp(&y.ordinate).unwrap());
    Ok(out)
}

fn locate_in_window(
    chi: &DirichletCharacter,
    a: f64,
    b: f64,
    policy: &PrecisionPolicy,
) -> Result<Vec<ZeroMatch>> {
    let n = count_zeros_rect(chi, a, b, 0.49, policy)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut stack = vec![(a, b, n)];
    while let Some((lo, hi, count)) = stack.pop() {
        if hi - lo <= LOCALIZATION_WIDTH {
            // a cluster narrower than the target width: report with its count
            out.push(ZeroMatch {
                ordinate: 0.5 * (lo + hi),
                order: count,
                chi_label: l_label(chi),
                localization_width: hi - lo,
            });
            continue;
        }
        let mid = 0.5 * (lo + hi);
        let left = count_zeros_rect(chi, lo, mid, 0.49, policy)?;
        let right = count - left;
        if left > 0 {
            stack.push((lo, mid, left));
        }
        if right > 0 {
            stack.push((mid, hi, right));
        }
    }
    out.sort_by(|x, y| x.ordinate.partial_cmp(&y.ordinate).unwrap());
    Ok(out)
}

/// All zero ordinates in (0, T], multiplicity by repetition.
pub fn find_zero_ordinates(
    chi: &DirichletCharacter,
    t_max: f64,
    policy: &PrecisionPolicy,
) -> Result<ZeroList> {
    if !(t_max > 0.0) {
        return Err(Error::domain("find_zero_ordinates requires T > 0"));
    }
    let matches = locate_zeros_range(chi, 1e-3, t_max, policy)?;
    let mut ords = Vec::new();
    for m in &matches {
        for _ in 0..m.order {
            ords.push(m.ordinate);
        }
    }
    Ok(ZeroList::new(l_label(chi), ords, ZeroSource::Computed))
}
