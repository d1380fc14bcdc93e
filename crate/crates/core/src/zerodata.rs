//! Ingest, validate, cache, and serve ordered lists of zero ordinates.
//!
//! File format: UTF-8 text, `#` comment lines, one decimal ordinate per
//! line, ascending. Repeated lines mean multiple zeros.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Where a zero list came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroSource {
    File(String),
    Computed,
    Merged,
}

/// Ordered positive ordinates of one L-function's nontrivial zeros,
/// multiplicity by repetition. A negative-shift mirror (see
/// [`mirror_for_shift`]) may extend the list below zero.
#[derive(Debug, Clone)]
pub struct ZeroList {
    pub label: String,
    ordinates: Vec<f64>,
    t_max: f64,
    pub source: ZeroSource,
}

impl ZeroList {
    pub fn new(label: impl Into<String>, mut ordinates: Vec<f64>, source: ZeroSource) -> Self {
        ordinates.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let t_max = ordinates.last().copied().unwrap_or(0.0);
        ZeroList {
            label: label.into(),
            ordinates,
            t_max,
            source,
        }
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Certified coverage height.
    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    /// Number of ordinates in (0, t].
    pub fn count_up_to(&self, t: f64) -> usize {
        let start = self.ordinates.partition_point(|&g| g <= 0.0);
        self.ordinates[start..].partition_point(|&g| g <= t)
    }

    /// Ordinates g with lo < g <= hi.
    pub fn slice_range(&self, lo: f64, hi: f64) -> &[f64] {
        let a = self.ordinates.partition_point(|&g| g <= lo);
        let b = self.ordinates.partition_point(|&g| g <= hi);
        &self.ordinates[a..b]
    }

    /// Nearest ordinate to t, if any.
    pub fn nearest(&self, t: f64) -> Option<f64> {
        if self.ordinates.is_empty() {
            return None;
        }
        let i = self.ordinates.partition_point(|&g| g < t);
        let mut best = f64::INFINITY;
        let mut arg = None;
        for j in [i.wrapping_sub(1), i] {
            if let Some(&g) = self.ordinates.get(j) {
                if (g - t).abs() < best {
                    best = (g - t).abs();
                    arg = Some(g);
                }
            }
        }
        arg
    }

    /// Canonical text serialization (idempotent with [`load_zeros`]).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# zero ordinates for {}", self.label);
        for &g in &self.ordinates {
            let _ = writeln!(out, "{g:.12}");
        }
        out
    }
}

/// Parse a zero file. Lines must be ascending; multiplicity by repetition.
pub fn load_zeros(path: impl AsRef<Path>, label: impl Into<String>) -> Result<ZeroList> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    let mut ordinates = Vec::new();
    let mut prev = f64::NEG_INFINITY;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line.parse().map_err(|_| Error::Parse {
            path: path.display().to_string(),
            line: i + 1,
            msg: format!("not a decimal ordinate: `{line}`"),
        })?;
        if !v.is_finite() {
            return Err(Error::Parse {
                path: path.display().to_string(),
                line: i + 1,
                msg: "ordinate must be finite".into(),
            });
        }
        if v < prev {
            return Err(Error::NonMonotone {
                path: path.display().to_string(),
                line: i + 1,
                value: v,
                prev,
            });
        }
        prev = v;
        ordinates.push(v);
    }
    let t_max = ordinates.last().copied().unwrap_or(0.0);
    Ok(ZeroList {
        label: label.into(),
        ordinates,
        t_max,
        source: ZeroSource::File(path.display().to_string()),
    })
}

/// Riemann-von Mangoldt smooth count (T/2pi) log(T/2pi e) + 7/8.
pub fn rvm_smooth_count(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    t / two_pi * (t / (two_pi * std::f64::consts::E)).ln() + 7.0 / 8.0
}

#[derive(Debug, Clone)]
pub struct CountReport {
    pub max_deviation: f64,
    pub worst_t: f64,
    pub pass: bool,
}

/// Check the cumulative zero count against Riemann-von Mangoldt on a grid of
/// heights, with slack 2 + log T. Only meaningful for the zeta list.
pub fn validate_counts(zeros: &ZeroList) -> Result<CountReport> {
    if zeros.label != "zeta" {
        return Err(Error::domain(format!(
            "validate_counts applies to the zeta list, not `{}`",
            zeros.label
        )));
    }
    if zeros.is_empty() {
        return Ok(CountReport {
            max_deviation: 0.0,
            worst_t: 0.0,
            pass: true,
        });
    }
    let t_max = zeros.t_max();
    let mut max_dev = 0.0f64;
    let mut worst_t = 0.0f64;
    let mut pass = true;
    let mut grid: Vec<f64> = Vec::new();
    let mut t = 10.0f64.min(t_max);
    while t < t_max {
        grid.push(t);
        t *= 1.05;
    }
    grid.push(t_max);
    for &t in &grid {
        let dev = (zeros.count_up_to(t) as f64 - rvm_smooth_count(t)).abs();
        if dev > max_dev {
            max_dev = dev;
            worst_t = t;
        }
        if dev > 2.0 + t.max(1.0).ln() {
            pass = false;
        }
    }
    Ok(CountReport {
        max_deviation: max_dev,
        worst_t,
        pass,
    })
}

/// Extend a list so that every zero with ordinate above `t` is available when
/// `t < 0`. For zeta the spectrum is symmetric, so negated ordinates are
/// appended; for an L-function the negative-side ordinates belong to the
/// conjugate character, whose list the caller must supply.
pub fn mirror_for_shift(
    zeros: &ZeroList,
    t: f64,
    conjugate: Option<&ZeroList>,
) -> Result<ZeroList> {
    if t >= 0.0 {
        return Ok(zeros.clone());
    }
    let negatives: Vec<f64> = if zeros.label == "zeta" {
        zeros.ordinates.iter().map(|&g| -g).collect()
    } else {
        let conj = conjugate.ok_or_else(|| Error::MissingConjugateList {
            label: zeros.label.clone(),
        })?;
        conj.ordinates.iter().map(|&g| -g).collect()
    };
    let mut all = negatives;
    all.retain(|&g| g > t); // only candidates the shifted range can use
    all.extend_from_slice(&zeros.ordinates);
    let mut merged = ZeroList::new(zeros.label.clone(), all, ZeroSource::Merged);
    merged.t_max = zeros.t_max;
    Ok(merged)
}

/// Merge two lists, checking consistency where they overlap: below the
/// smaller coverage every ordinate of one list must match one of the other
/// within `tol`.
pub fn merge_consistent(a: &ZeroList, b: &ZeroList, tol: f64) -> Result<ZeroList> {
    let overlap = a.t_max().min(b.t_max());
    for (x, y) in [(a, b), (b, a)] {
        for &g in x.slice_range(0.0, overlap) {
            match y.nearest(g) {
                Some(h) if (g - h).abs() <= tol => {}
                other => {
                    return Err(Error::domain(format!(
                        "lists `{}` and `{}` disagree near t={g}: nearest {other:?}",
                        a.label, b.label
                    )))
                }
            }
        }
    }
    let mut ords = a.ordinates.clone();
    for &g in &b.ordinates {
        if a.nearest(g).map_or(true, |h| (g - h).abs() > tol) {
            ords.push(g);
        }
    }
    Ok(ZeroList::new(a.label.clone(), ords, ZeroSource::Merged))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f.flush().unwrap();
        f
    }

    #[test]
    fn load_basic() {
        let f = write_tmp("# two zeros\n14.134725141\n21.022039639\n");
        let z = load_zeros(f.path(), "zeta").unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(z.t_max(), 21.022039639);
    }

    #[test]
    fn load_empty() {
        let f = write_tmp("# nothing\n");
        let z = load_zeros(f.path(), "zeta").unwrap();
        assert!(z.is_empty());
        assert_eq!(z.t_max(), 0.0);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let f = write_tmp("14.1\nnot-a-number\n");
        match load_zeros(f.path(), "zeta") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        let f = write_tmp("21.0\n14.1\n");
        match load_zeros(f.path(), "zeta") {
            Err(Error::NonMonotone { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn round_trip_is_bit_identical() {
        let f = write_tmp("14.134725141000\n21.022039639000\n25.010857580000\n");
        let z = load_zeros(f.path(), "zeta").unwrap();
        let text = z.to_text();
        let f2 = write_tmp(&text);
        let z2 = load_zeros(f2.path(), "zeta").unwrap();
        assert_eq!(z2.to_text(), text);
        assert_eq!(z.ordinates(), z2.ordinates());
    }

    #[test]
    fn validate_small() {
        let z = ZeroList::new(
            "zeta",
            vec![14.134725141, 21.022039639, 25.010857580],
            ZeroSource::Computed,
        );
        let r = validate_counts(&z).unwrap();
        assert!(r.pass, "max dev {} at {}", r.max_deviation, r.worst_t);
    }

    #[test]
    fn validate_catches_gap() {
        // removing the zeros between 40 and 60 pushes the count outside the
        // 2 + log T slack near the top of the window
        let full = [
            14.134725141,
            21.022039639,
            25.010857580,
            30.424876126,
            32.935061588,
            37.586178159,
            40.918719012,
            43.327073281,
            48.005150881,
            49.773832478,
            52.970321478,
            56.446247697,
            59.347044003,
            60.831778525,
            65.112544048,
            67.079810529,
            69.546401711,
            72.067157674,
            75.704690699,
        ];
        let truncated: Vec<f64> = full
            .iter()
            .copied()
            .filter(|&g| !(40.0..60.0).contains(&g))
            .collect();
        let z = ZeroList::new("zeta", truncated, ZeroSource::Computed);
        let r = validate_counts(&z).unwrap();
        assert!(!r.pass);
        assert!(r.worst_t > 40.0);
    }

    #[test]
    fn validate_empty_passes() {
        let z = ZeroList::new("zeta", vec![], ZeroSource::Computed);
        assert!(validate_counts(&z).unwrap().pass);
    }

    #[test]
    fn validate_requires_zeta() {
        let z = ZeroList::new("L/5.2", vec![6.6], ZeroSource::Computed);
        assert!(validate_counts(&z).is_err());
    }

    #[test]
    fn mirror_positive_shift_unchanged() {
        let z = ZeroList::new("zeta", vec![14.13, 21.02], ZeroSource::Computed);
        let m = mirror_for_shift(&z, 5.0, None).unwrap();
        assert_eq!(m.ordinates(), z.ordinates());
    }

    #[test]
    fn mirror_negative_shift_zeta() {
        let z = ZeroList::new("zeta", vec![14.13, 21.02, 25.01], ZeroSource::Computed);
        let m = mirror_for_shift(&z, -20.0, None).unwrap();
        assert!(m.ordinates().contains(&-14.13));
        assert!(!m.ordinates().contains(&-25.01)); // below the shift, unusable
    }

    #[test]
    fn mirror_l_list_needs_conjugate() {
        let z = ZeroList::new("L/5.1", vec![3.5], ZeroSource::Computed);
        assert!(matches!(
            mirror_for_shift(&z, -2.0, None),
            Err(Error::MissingConjugateList { .. })
        ));
        let conj = ZeroList::new("L/5.3", vec![1.0, 4.0], ZeroSource::Computed);
        let m = mirror_for_shift(&z, -2.0, Some(&conj)).unwrap();
        assert!(m.ordinates().contains(&-1.0));
    }

    #[test]
    fn merge_checks_overlap() {
        let a = ZeroList::new("zeta", vec![14.1347251, 21.0220396], ZeroSource::Computed);
        let b = ZeroList::new(
            "zeta",
            vec![14.1347252, 21.0220397, 25.01],
            ZeroSource::Computed,
        );
        let m = merge_consistent(&a, &b, 1e-5).unwrap();
        assert_eq!(m.len(), 3);
        let c = ZeroList::new("zeta", vec![14.3], ZeroSource::Computed);
        assert!(merge_consistent(&a, &c, 1e-5).is_err());
    }
}
