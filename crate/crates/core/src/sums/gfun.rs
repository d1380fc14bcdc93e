//! The exponential integral G(x;alpha,z) = int_1^x e(-alpha u)(1 - log u/log x) u^z du:
//! an adaptive Gauss-Kronrod quadrature oracle and the oscillatory main-term
//! asymptotics for z = iy with |y| large.

use num_complex::Complex64;

use super::summation::KahanComplex;
use crate::error::{Error, Result};
use crate::specials::{digamma, kummer_1f1, log_gamma, PrecisionPolicy};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

fn cis(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

// 15-point Kronrod nodes with the embedded 7-point Gauss rule (QUADPACK qk15)
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = WGK[7] * fc.norm();
    for j in 0..7 {
        let u = h * XGK[j];
        let f1 = f(c - u);
        let f2 = f(c + u);
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    (
        resk * h,
        (resk - resg).norm() * h.abs(),
        resabs * h.abs(),
    )
}

struct Adaptive<'a, F> {
    f: &'a F,
    subdivisions: usize,
    max_subdivisions: usize,
    /// evaluation-noise factor: oscillatory phases of size P carry ~eps*P
    /// absolute jitter, which caps how small |K-G| can honestly get
    noise_eps: f64,
    resabs_total: f64,
}

impl<F: Fn(f64) -> Complex64> Adaptive<'_, F> {
    fn integrate(&mut self, a: f64, b: f64, tol: f64, depth: usize) -> Result<(Complex64, f64)> {
        let (val, err, resabs) = gk15(self.f, a, b);
        let floor = self.noise_eps * resabs;
        if err <= tol.max(floor) || depth >= 20 {
            self.resabs_total += resabs;
            return Ok((val, err.min(floor.max(tol))));
        }
        self.subdivisions += 1;
        if self.subdivisions > self.max_subdivisions {
            return Err(Error::QuadratureNonConvergence {
                subdivisions: self.subdivisions,
                last_err: err,
            });
        }
        let m = 0.5 * (a + b);
        let (v1, e1) = self.integrate(a, m, 0.5 * tol, depth + 1)?;
        let (v2, e2) = self.integrate(m, b, 0.5 * tol, depth + 1)?;
        Ok((v1 + v2, e1 + e2))
    }
}

/// Ground-truth quadrature for G(x;alpha,z), Re z > -1, x > 1.
///
/// The range is pre-split so each segment spans at most a quarter of the
/// local oscillation (both the e(-alpha u) factor and u^{iy}), then each
/// segment is integrated adaptively.
pub fn g_quadrature(x: f64, alpha: f64, z: Complex64, policy: &PrecisionPolicy) -> Result<Complex64> {
    if !(x > 1.0) {
        return Err(Error::domain("g_quadrature requires x > 1"));
    }
    if !(alpha > 0.0) {
        return Err(Error::domain("g_quadrature requires alpha > 0"));
    }
    if z.re <= -1.0 {
        return Err(Error::domain("g_quadrature requires Re z > -1"));
    }
    let ln_x = x.ln();
    let f = move |u: f64| -> Complex64 {
        let ln_u = u.ln();
        let amp = (z.re * ln_u).exp() * (1.0 - ln_u / ln_x);
        amp * cis(-TWO_PI * alpha * u + z.im * ln_u)
    };
    // oscillatory phases of size ~2 pi alpha x + |y| log x jitter at the eps
    // level; the integrator cannot honestly resolve below that
    let phase_scale = TWO_PI * alpha * x + z.im.abs() * ln_x.max(1.0) + 100.0;
    let mut adaptive = Adaptive {
        f: &f,
        subdivisions: 0,
        max_subdivisions: 4_000_000,
        noise_eps: f64::EPSILON * phase_scale,
        resabs_total: 0.0,
    };
    let mut acc = KahanComplex::default();
    let mut total_err = 0.0;
    let mut u = 1.0f64;
    let cap = 1.0 / (4.0 * alpha);
    while u < x {
        let rate = (z.im / u - TWO_PI * alpha).abs() + 1e-9;
        let len = (std::f64::consts::FRAC_PI_2 / rate)
            .min(cap)
            .min(x - u)
            .max(1e-9);
        let seg_tol = policy.quadrature_rel_tol * (len / (x - 1.0)).max(1e-12);
        let (v, e) = adaptive.integrate(u, u + len, seg_tol, 0)?;
        acc.add(v);
        total_err += e;
        u += len;
    }
    let value = acc.value();
    let noise_budget = 4.0 * adaptive.noise_eps * adaptive.resabs_total;
    if total_err > 1e-6 * (1.0 + value.norm()) + noise_budget {
        return Err(Error::QuadratureNonConvergence {
            subdivisions: adaptive.subdivisions,
            last_err: total_err,
        });
    }
    Ok(value)
}

/// Main-term asymptotics of G(x;alpha,iy) for |y| >= 5: the stationary-phase
/// principal term together with the Kummer term; the neglected contributions
/// are reported as `error_bound`, not added.
#[derive(Debug, Clone, Copy)]
pub struct GAsymptotic {
    pub value: Complex64,
    /// magnitude of the oscillatory principal term
    pub main_abs: f64,
    /// order-of-magnitude bound on the neglected error terms
    pub error_bound: f64,
}

pub fn g_asymptotic(x: f64, alpha: f64, y: f64, policy: &PrecisionPolicy) -> Result<GAsymptotic> {
    if y.abs() < 5.0 {
        return Err(Error::domain("g_asymptotic requires |y| >= 5"));
    }
    if !(x > 1.0 && alpha > 0.0) {
        return Err(Error::domain("g_asymptotic requires x > 1 and alpha > 0"));
    }
    let ln_x = x.ln();
    let ay = y.abs();
    let beta = TWO_PI * alpha;
    // log-magnitude of e^{i pi/4} sqrt(2 pi |y|)/(2 pi i alpha) e(...)
    // with the exp(-pi(|y|-y)/2) damping folded in
    let log_mag = 0.5 * (TWO_PI * ay).ln() - beta.ln()
        - std::f64::consts::FRAC_PI_2 * (ay - y);
    let mollifier = 1.0 - (ay / beta).ln() / ln_x;
    let main = if log_mag < -700.0 {
        // underflow-to-zero: the damping factor kills the term outright
        Complex64::new(0.0, 0.0)
    } else {
        let angle = std::f64::consts::FRAC_PI_4 - std::f64::consts::FRAC_PI_2
            + ay * ((ay / beta).ln() - 1.0);
        log_mag.exp() * mollifier * cis(angle)
    };
    let f11 = kummer_1f1(
        Complex64::new(1.0, 0.0),
        Complex64::new(2.0, y),
        Complex64::new(0.0, beta),
        policy,
    )?;
    let kummer_term = -cis(-beta) / Complex64::new(1.0, y) * f11;
    let value = main + kummer_term;
    let delta = 0.25;
    let error_bound = main.norm() / ay
        + 1.0 / (ln_x * ay * ay)
        + (-delta * ln_x).exp() / ln_x * ay.powf(-(0.5 - delta));
    Ok(GAsymptotic {
        value,
        main_abs: main.norm(),
        error_bound,
    })
}

/// Exact principal term of the large-|y| expansion, before the
/// stationary-phase simplification: (2 pi i alpha)^{-1-iy} Gamma(1+iy)
/// (1 + (log(2 pi i alpha) - digamma(1+iy))/log x). Used by tests to check
/// the simplified form.
pub fn g_main_term_exact(x: f64, alpha: f64, y: f64) -> Result<Complex64> {
    let beta = TWO_PI * alpha;
    let w = Complex64::new(0.0, beta); // 2 pi i alpha
    let log_w = Complex64::new(beta.ln(), std::f64::consts::FRAC_PI_2);
    let exponent = -(Complex64::new(1.0, y)) * log_w + log_gamma(Complex64::new(1.0, y))?;
    let correction = 1.0 + (log_w - digamma(Complex64::new(1.0, y))?) / x.ln();
    let _ = w;
    Ok(exponent.exp() * correction)
}
