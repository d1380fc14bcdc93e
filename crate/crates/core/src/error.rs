use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole of {function} at {location}")]
    Pole { function: &'static str, location: String },

    #[error("zero list `{label}` covers height {have:.3} but {need:.3} is required")]
    Coverage { label: String, have: f64, need: f64 },

    #[error("shift t={t} coincides with a zero ordinate {ordinate} (within {tol:e})")]
    DegenerateShift { t: f64, ordinate: f64, tol: f64 },

    #[error("Gauss sum of {chi} vanishes; the twisted identity requires tau(chi) != 0")]
    VanishingGaussSum { chi: String },

    #[error("parse error in {path} line {line}: {msg}")]
    Parse { path: String, line: usize, msg: String },

    #[error("ordinates not ascending in {path}: line {line} ({value}) <= previous ({prev})")]
    NonMonotone { path: String, line: usize, value: f64, prev: f64 },

    #[error("conjugate zero list required to mirror `{label}` for negative shifts")]
    MissingConjugateList { label: String },

    #[error("|L| stays small on the contour boundary after {attempts} perturbations near t={t}")]
    BoundaryZero { t: f64, attempts: usize },

    #[error("a zero lies too close to the circle |z-s|={radius} around s={s}; retry with a smaller radius")]
    RetrySmallerRadius { s: String, radius: f64 },

    #[error("quadrature failed to converge after {subdivisions} subdivisions (last error {last_err:e})")]
    QuadratureNonConvergence { subdivisions: usize, last_err: f64 },

    #[error("no divergence detected: normalized slope {slope:.3} below threshold {threshold:.3}")]
    NoDivergence { slope: f64, threshold: f64 },

    #[error("io error on {path}: {msg}")]
    Io { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
