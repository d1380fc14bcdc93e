//! Scan t-grids of the twisted zero sum, find peaks, match them against
//! reference L-zero ordinates, and estimate the zero order from the log x
//! growth of the peak height.

use rayon::prelude::*;
use serde::Serialize;

use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::sums::{predict_twisted_coeff, twisted_zero_sum};
use crate::zerodata::ZeroList;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
const MATCH_WINDOW: f64 = 0.1;
const SKIP_TOL: f64 = 1e-6;

/// A sampled magnitude curve of |sum_a conj(chi)(a) Z(x;t,a/q)|.
#[derive(Debug, Clone)]
pub struct ScanCurve {
    pub chi_label: String,
    pub x: f64,
    pub t_lo: f64,
    pub step: f64,
    pub grid: Vec<f64>,
    pub magnitudes: Vec<f64>,
    /// indices of grid points within 1e-6 of a zeta ordinate, excluded from
    /// evaluation and filled by linear interpolation for display
    pub skipped: Vec<usize>,
}

/// A detected peak, optionally matched to a reference ordinate.
#[derive(Debug, Clone, Serialize)]
pub struct PeakReport {
    pub t_star: f64,
    pub height: f64,
    pub matched_ordinate: Option<f64>,
    pub residual: Option<f64>,
    pub fitted_m: Option<usize>,
    /// more than one reference ordinate fell inside the match window
    pub ambiguous: bool,
}

/// Evaluate the twisted-sum magnitude on a uniform grid. Grid points sitting
/// on a zeta ordinate are skipped (the shifted sum is undefined there) and
/// interpolated afterwards.
pub fn scan_grid(
    chi: &DirichletCharacter,
    zeros: &ZeroList,
    x: f64,
    t_lo: f64,
    t_hi: f64,
    h: f64,
) -> Result<ScanCurve> {
    if !(h > 0.0 && t_hi > t_lo) {
        return Err(Error::domain("scan_grid requires h > 0 and t_hi > t_lo"));
    }
    let q = chi.modulus();
    let worst_alpha = (1..=q)
        .rev()
        .find(|&a| chi.eval(a as i64).norm() > 0.0)
        .map(|a| a as f64 / q as f64)
        .unwrap_or(1.0);
    let need = t_hi + TWO_PI * worst_alpha * x;
    if zeros.t_max() < need {
        return Err(Error::Coverage {
            label: zeros.label.clone(),
            have: zeros.t_max(),
            need,
        });
    }
    let n = ((t_hi - t_lo) / h).floor() as usize + 1;
    let grid: Vec<f64> = (0..n).map(|k| t_lo + k as f64 * h).collect();
    let results: Vec<Option<f64>> = grid
        .par_iter()
        .map(|&t| {
            let degenerate = zeros.nearest(t).is_some_and(|g| (g - t).abs() <= SKIP_TOL);
            if degenerate {
                None
            } else {
                Some(
                    twisted_zero_sum(zeros, x, t, chi)
                        .map(|r| r.total.value.norm()),
                )
            }
        })
        .map(|r| r.transpose())
        .collect::<Result<_>>()?;
    let mut magnitudes = vec![0.0; n];
    let mut skipped = Vec::new();
    for (i, r) in results.iter().enumerate() {
        match r {
            Some(v) => magnitudes[i] = *v,
            None => skipped.push(i),
        }
    }
    // fill skipped points by linear interpolation between computed neighbors
    for &i in &skipped {
        let left = (0..i).rev().find(|j| !skipped.contains(j));
        let right = (i + 1..n).find(|j| !skipped.contains(j));
        magnitudes[i] = match (left, right) {
            (Some(l), Some(r)) => {
                let w = (i - l) as f64 / (r - l) as f64;
                magnitudes[l] * (1.0 - w) + magnitudes[r] * w
            }
            (Some(l), None) => magnitudes[l],
            (None, Some(r)) => magnitudes[r],
            (None, None) => 0.0,
        };
    }
    Ok(ScanCurve {
        chi_label: chi.label(),
        x,
        t_lo,
        step: h,
        grid,
        magnitudes,
        skipped,
    })
}

fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Scipy-style prominence: peak height minus the higher of the two valley
/// floors on the way to the nearest higher ground.
fn prominence(mags: &[f64], i: usize) -> f64 {
    let peak = mags[i];
    let mut left_min = peak;
    for j in (0..i).rev() {
        if mags[j] > peak {
            break;
        }
        left_min = left_min.min(mags[j]);
    }
    let mut right_min = peak;
    for &m in &mags[i + 1..] {
        if m > peak {
            break;
        }
        right_min = right_min.min(m);
    }
    peak - left_min.max(right_min)
}

/// Local maxima with prominence at least `min_prominence` (default: half the
/// median magnitude), refined by 3-point parabolic interpolation and matched
/// against `reference` ordinates within 0.1.
pub fn find_peaks(
    curve: &ScanCurve,
    min_prominence: Option<f64>,
    reference: Option<&ZeroList>,
) -> Result<Vec<PeakReport>> {
    let m = &curve.magnitudes;
    if m.len() < 3 {
        return Err(Error::domain("find_peaks needs at least 3 grid points"));
    }
    let threshold = min_prominence.unwrap_or_else(|| 0.5 * median(m));
    let mut out = Vec::new();
    for i in 1..m.len() - 1 {
        if !(m[i] > m[i - 1] && m[i] > m[i + 1]) {
            continue;
        }
        if prominence(m, i) < threshold {
            continue;
        }
        // parabola through the three points around the maximum
        let denom = m[i - 1] - 2.0 * m[i] + m[i + 1];
        let delta = if denom.abs() < 1e-300 {
            0.0
        } else {
            0.5 * (m[i - 1] - m[i + 1]) / denom
        };
        let t_star = curve.grid[i] + delta.clamp(-1.0, 1.0) * curve.step;
        let height = m[i] - 0.25 * (m[i - 1] - m[i + 1]) * delta.clamp(-1.0, 1.0);
        let (matched, residual, ambiguous) = match reference {
            Some(list) => {
                let cands: Vec<f64> = list
                    .ordinates()
                    .iter()
                    .copied()
                    .filter(|g| (g - t_star).abs() <= MATCH_WINDOW)
                    .collect();
                match cands.len() {
                    0 => (None, None, false),
                    1 => (Some(cands[0]), Some((cands[0] - t_star).abs()), false),
                    _ => {
                        let best = cands
                            .iter()
                            .copied()
                            .min_by(|a, b| {
                                (a - t_star).abs().partial_cmp(&(b - t_star).abs()).unwrap()
                            })
                            .unwrap();
                        (Some(best), Some((best - t_star).abs()), true)
                    }
                }
            }
            None => (None, None, false),
        };
        out.push(PeakReport {
            t_star,
            height,
            matched_ordinate: matched,
            residual,
            fitted_m: None,
            ambiguous,
        });
    }
    Ok(out)
}

/// Result of the log x slope regression at a zero ordinate.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OrderFit {
    pub fitted_m: usize,
    pub normalized_slope: f64,
    pub rms_residual: f64,
}

/// Regress |twisted sum| against log x at a localized zero ordinate and
/// normalize the slope by |tau(chi)|/(2 sqrt(2 pi)); the rounded ratio is
/// the fitted order m.
pub fn fit_order_slope(
    chi: &DirichletCharacter,
    zeros: &ZeroList,
    t_star: f64,
    xs: &[f64],
) -> Result<OrderFit> {
    if xs.len() < 3 {
        return Err(Error::domain("fit_order_slope needs at least 3 x values"));
    }
    let (lo, hi) = xs
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    if hi / lo < 10.0 {
        return Err(Error::domain("fit_order_slope needs xs spanning a decade or more"));
    }
    let unit_slope = predict_twisted_coeff(chi, 1)?.norm();
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .map(|&x| {
            twisted_zero_sum(zeros, x, t_star, chi).map(|r| (x.ln(), r.total.value.norm()))
        })
        .collect::<Result<_>>()?;
    // least squares y = a + b u
    let n = pts.len() as f64;
    let su: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let suu: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let suy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * suy - su * sy) / (n * suu - su * su);
    let intercept = (sy - slope * su) / n;
    let rms = (pts
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    let normalized = slope / unit_slope;
    if normalized <= 0.3 {
        return Err(Error::NoDivergence {
            slope: normalized,
            threshold: 0.3,
        });
    }
    Ok(OrderFit {
        fitted_m: (normalized.round() as usize).max(1),
        normalized_slope: normalized,
        rms_residual: rms,
    })
}
