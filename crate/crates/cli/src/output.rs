//! Atomic file emitters: CSV, JSON, and plain polyline SVG plots.

use std::path::Path;

use zerolink::error::{Error, Result};
use zerolink::sums::{Alpha, SumResult};

/// Write atomically: temp file in the same directory, then rename.
pub fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let io_err = |e: std::io::Error| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    };
    std::fs::write(&tmp, content).map_err(io_err)?;
    std::fs::rename(&tmp, path).map_err(io_err)?;
    Ok(())
}

/// Emit to a file when a path is given, else to stdout.
pub fn emit(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Machine-readable error envelope printed on stderr.
pub fn error_json(e: &Error) -> String {
    let kind = match e {
        Error::Domain(_) => "domain",
        Error::Pole { .. } => "pole",
        Error::Coverage { .. } => "coverage",
        Error::DegenerateShift { .. } => "degenerate_shift",
        Error::VanishingGaussSum { .. } => "vanishing_gauss_sum",
        Error::Parse { .. } => "parse",
        Error::NonMonotone { .. } => "non_monotone",
        Error::MissingConjugateList { .. } => "missing_conjugate_list",
        Error::BoundaryZero { .. } => "boundary_zero",
        Error::RetrySmallerRadius { .. } => "retry_smaller_radius",
        Error::QuadratureNonConvergence { .. } => "quadrature_nonconvergence",
        Error::NoDivergence { .. } => "no_divergence",
        Error::Io { .. } => "io",
    };
    let mut obj = serde_json::json!({
        "error": kind,
        "message": e.to_string(),
    });
    if let Error::Coverage { label, have, need } = e {
        obj["label"] = serde_json::json!(label);
        obj["have_height"] = serde_json::json!(have);
        obj["required_height"] = serde_json::json!(need);
    }
    obj.to_string()
}

/// CSV header shared by the sum commands.
pub const SUM_CSV_HEADER: &str = "x,t,alpha_num,alpha_den_or_0,re,im,terms,tail_bound";

/// One CSV row for a sum evaluation: rational phases keep their exact pair,
/// decimals carry denominator 0.
pub fn sum_csv_row(x: f64, t: f64, alpha: Alpha, r: &SumResult) -> String {
    let (num, den) = match alpha {
        Alpha::Rational(p) => (p.numer() as f64, p.denom() as f64),
        Alpha::Real(v) => (v, 0.0),
    };
    format!(
        "{x},{t},{num},{den},{},{},{},{}",
        r.value.re, r.value.im, r.terms_used, r.truncation_tail_bound
    )
}

/// A labelled curve for the SVG plot.
pub struct Series<'a> {
    pub label: &'a str,
    pub color: &'a str,
    pub width: f64,
    pub dashed: bool,
    pub points: Vec<(f64, f64)>,
}

/// Minimal deterministic line plot: one axis box, ticks, and polylines.
pub fn svg_plot(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let (w, h) = (900.0, 520.0);
    let (ml, mr, mt, mb) = (70.0, 20.0, 40.0, 50.0);
    let (pw, ph) = (w - ml - mr, h - mt - mb);
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = 0.0f64;
    let mut y_max = f64::NEG_INFINITY;
    for s in series {
        for &(x, y) in &s.points {
            x_min = x_min.min(x);
            x_max = x_max.max(x);
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
    }
    if !(x_max > x_min) {
        x_max = x_min + 1.0;
    }
    if !(y_max > y_min) {
        y_max = y_min + 1.0;
    }
    y_max *= 1.05;
    let px = |x: f64| ml + (x - x_min) / (x_max - x_min) * pw;
    let py = |y: f64| mt + ph - (y - y_min) / (y_max - y_min) * ph;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    ));
    out.push_str(&format!(
        "<rect x=\"{ml}\" y=\"{mt}\" width=\"{pw}\" height=\"{ph}\" fill=\"white\" stroke=\"black\"/>\n"
    ));
    out.push_str(&format!(
        "<text x=\"{}\" y=\"22\" font-size=\"15\" text-anchor=\"middle\">{title}</text>\n",
        ml + pw / 2.0
    ));
    // ticks
    for i in 0..=8 {
        let x = x_min + (x_max - x_min) * i as f64 / 8.0;
        let sx = px(x);
        out.push_str(&format!(
            "<line x1=\"{sx}\" y1=\"{}\" x2=\"{sx}\" y2=\"{}\" stroke=\"black\"/>\n",
            mt + ph,
            mt + ph + 5.0
        ));
        out.push_str(&format!(
            "<text x=\"{sx}\" y=\"{}\" font-size=\"11\" text-anchor=\"middle\">{:.2}</text>\n",
            mt + ph + 18.0,
            x
        ));
    }
    for i in 0..=5 {
        let y = y_min + (y_max - y_min) * i as f64 / 5.0;
        let sy = py(y);
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{sy}\" x2=\"{ml}\" y2=\"{sy}\" stroke=\"black\"/>\n",
            ml - 5.0
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"end\">{:.2}</text>\n",
            ml - 8.0,
            sy + 4.0,
            y
        ));
    }
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\">{x_label}</text>\n",
        ml + pw / 2.0,
        h - 12.0
    ));
    out.push_str(&format!(
        "<text x=\"16\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{y_label}</text>\n",
        mt + ph / 2.0,
        mt + ph / 2.0
    ));
    for (i, s) in series.iter().enumerate() {
        let mut d = String::new();
        for (j, &(x, y)) in s.points.iter().enumerate() {
            d.push_str(if j == 0 { "M" } else { "L" });
            d.push_str(&format!("{:.2} {:.2} ", px(x), py(y)));
        }
        let dash = if s.dashed { " stroke-dasharray=\"6 4\"" } else { "" };
        out.push_str(&format!(
            "<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"{dash}/>\n",
            d.trim_end(),
            s.color,
            s.width
        ));
        let ly = mt + 16.0 + 16.0 * i as f64;
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{}\" stroke-width=\"{}\"{dash}/>\n",
            ml + 10.0,
            ml + 40.0,
            s.color,
            s.width
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>\n",
            ml + 46.0,
            ly + 4.0,
            s.label
        ));
    }
    out.push_str("</svg>\n");
    out
}
