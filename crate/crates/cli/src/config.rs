//! Global options, the key=value config file, and zero-list resolution.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use clap::Args;

use zerolink::error::{Error, Result};
use zerolink::lfunc;
use zerolink::specials::PrecisionPolicy;
use zerolink::zerodata::{self, ZeroList};

/// Environment variable naming the default directory for zero files.
pub const ZEROS_DIR_ENV: &str = "ZEROLINK_ZEROS_DIR";

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Zero file as label=path (label "zeta" or "L/q.k"); repeatable
    #[arg(long = "zeros", global = true, value_name = "LABEL=PATH")]
    pub zeros: Vec<String>,

    /// Synthesize the zeta list up to height T instead of loading a file
    #[arg(long = "zeros-compute", global = true, value_name = "T")]
    pub zeros_compute: Option<f64>,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// key=value config file mirroring these options
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Absolute tolerance for the special-function evaluators
    #[arg(long = "abs-tol", global = true)]
    pub abs_tol: Option<f64>,

    /// Euler-Maclaurin correction order (1..=15)
    #[arg(long = "em-order", global = true)]
    pub em_order: Option<usize>,
}

/// Resolved global state shared by every subcommand.
pub struct Context {
    pub zero_files: HashMap<String, PathBuf>,
    pub zeros_compute: Option<f64>,
    pub policy: PrecisionPolicy,
}

impl Context {
    pub fn build(opts: &GlobalOpts) -> Result<Self> {
        let mut merged = opts.clone();
        if let Some(path) = &opts.config {
            apply_config_file(path, &mut merged)?;
        }
        if let Some(n) = merged.threads {
            // ignore the error if a pool was already installed (tests)
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        let mut policy = PrecisionPolicy::default();
        if let Some(t) = merged.abs_tol {
            policy.target_abs_tol = t;
        }
        if let Some(k) = merged.em_order {
            policy.euler_maclaurin_order = k;
        }
        policy.validate()?;
        let mut zero_files = HashMap::new();
        for spec in &merged.zeros {
            let (label, path) = spec.split_once('=').ok_or_else(|| {
                Error::domain(format!("--zeros expects LABEL=PATH, got `{spec}`"))
            })?;
            let path = resolve_zero_path(path);
            if !path.exists() {
                return Err(Error::Io {
                    path: path.display().to_string(),
                    msg: "zero file not found".into(),
                });
            }
            zero_files.insert(label.to_string(), path);
        }
        Ok(Context {
            zero_files,
            zeros_compute: merged.zeros_compute,
            policy,
        })
    }

    /// The zeta ordinate list: from file, or computed when requested.
    pub fn zeta_zeros(&self) -> Result<ZeroList> {
        if let Some(path) = self.zero_files.get("zeta") {
            return zerodata::load_zeros(path, "zeta");
        }
        if let Some(t) = self.zeros_compute {
            return lfunc::find_zero_ordinates(&lfunc::zeta_character(), t, &self.policy);
        }
        Err(Error::domain(
            "no zeta zeros available: pass --zeros zeta=FILE or --zeros-compute T",
        ))
    }

}

fn resolve_zero_path(raw: &str) -> PathBuf {
    let p = PathBuf::from(raw);
    if p.exists() || p.is_absolute() {
        return p;
    }
    if let Ok(dir) = std::env::var(ZEROS_DIR_ENV) {
        let candidate = Path::new(&dir).join(raw);
        if candidate.exists() {
            return candidate;
        }
    }
    p
}

fn apply_config_file(path: &Path, opts: &mut GlobalOpts) -> Result<()> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            path: path.display().to_string(),
            line: i + 1,
            msg: "expected key=value".into(),
        })?;
        let bad = |msg: &str| Error::Parse {
            path: path.display().to_string(),
            line: i + 1,
            msg: msg.into(),
        };
        match key.trim() {
            "zeros" => opts.zeros.push(value.trim().to_string()),
            "zeros-compute" => {
                opts.zeros_compute
                    .get_or_insert(value.trim().parse().map_err(|_| bad("bad height"))?);
            }
            "threads" => {
                opts.threads
                    .get_or_insert(value.trim().parse().map_err(|_| bad("bad thread count"))?);
            }
            "abs-tol" => {
                opts.abs_tol
                    .get_or_insert(value.trim().parse().map_err(|_| bad("bad tolerance"))?);
            }
            "em-order" => {
                opts.em_order
                    .get_or_insert(value.trim().parse().map_err(|_| bad("bad order"))?);
            }
            other => return Err(bad(&format!("unknown config key `{other}`"))),
        }
    }
    Ok(())
}

/// Parse "a/q" as an exact rational, anything else as a decimal.
pub fn parse_alpha(raw: &str) -> Result<zerolink::sums::Alpha> {
    if let Some((a, q)) = raw.split_once('/') {
        let a: u64 = a
            .trim()
            .parse()
            .map_err(|_| Error::domain(format!("bad rational numerator in `{raw}`")))?;
        let q: u64 = q
            .trim()
            .parse()
            .map_err(|_| Error::domain(format!("bad rational denominator in `{raw}`")))?;
        Ok(zerolink::sums::Alpha::Rational(zerolink::sums::RationalPhase::new(a, q)?))
    } else {
        let v: f64 = raw
            .trim()
            .parse()
            .map_err(|_| Error::domain(format!("bad decimal phase `{raw}`")))?;
        Ok(zerolink::sums::Alpha::Real(v))
    }
}

/// Parse "lo:hi:step" into a grid specification.
pub fn parse_range(raw: &str) -> Result<(f64, f64, f64)> {
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::domain(format!("expected LO:HI:STEP, got `{raw}`")));
    }
    let lo: f64 = parts[0].parse().map_err(|_| Error::domain("bad range start"))?;
    let hi: f64 = parts[1].parse().map_err(|_| Error::domain("bad range end"))?;
    let step: f64 = parts[2].parse().map_err(|_| Error::domain("bad range step"))?;
    if !(step > 0.0 && hi > lo) {
        return Err(Error::domain("range requires hi > lo and step > 0"));
    }
    Ok((lo, hi, step))
}

/// Parse a comma-separated list of x values.
pub fn parse_xs(raw: &str) -> Result<Vec<f64>> {
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::domain(format!("bad x value `{s}`")))
        })
        .collect()
}
