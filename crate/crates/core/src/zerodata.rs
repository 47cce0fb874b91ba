//! Tables of zero ordinates, empirical window counts, and the comparison of
//! the counts with the explicit bounds.
//!
//! File format: one decimal ordinate per line in ascending order, `#`
//! starts a comment, blank lines are ignored, and an optional
//! `height = <real>` line certifies that every zero with `0 < gamma <= height`
//! is listed. LF or CRLF line endings; a byte order mark is rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bounds::{bound_window, trudgian_count};
use crate::error::{domain, Error, Result};
use crate::field::{parse_field_descriptor, FieldInvariants};

/// Positive zero ordinates of one zeta function, with certified coverage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    pub ordinates: Vec<f64>,
    /// All zeros with `0 < gamma <= height` are present.
    pub height: f64,
    pub field: FieldInvariants<f64>,
    pub source: String,
    /// Bound on the error of each listed ordinate; one unit in the last
    /// printed decimal place unless set explicitly.
    pub ordinate_error: f64,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Plain decimal: digits with at most one point, no sign or exponent.
fn parse_decimal(s: &str, line: usize) -> Result<(f64, usize)> {
    let mut dots = 0;
    for ch in s.chars() {
        match ch {
            '0'..='9' => {}
            '.' => dots += 1,
            _ => return Err(parse_err(line, format!("not a plain decimal: {s:?}"))),
        }
    }
    if dots > 1 || s.is_empty() || s == "." {
        return Err(parse_err(line, format!("not a plain decimal: {s:?}")));
    }
    let places = s.split_once('.').map_or(0, |(_, f)| f.len());
    let x: f64 = s.parse().map_err(|_| parse_err(line, format!("not a number: {s:?}")))?;
    Ok((x, places))
}

impl ZeroTable {
    pub fn new(ordinates: Vec<f64>, height: f64, field: FieldInvariants<f64>, source: impl Into<String>) -> Result<Self> {
        if !height.is_finite() || height < 0.0 {
            return Err(Error::Meta(format!("height must be finite and non-negative, got {height}")));
        }
        for (i, w) in ordinates.windows(2).enumerate() {
            if w[1] < w[0] {
                return Err(Error::Order { line: i + 2, msg: format!("{} after {}", w[1], w[0]) });
            }
        }
        if ordinates.iter().any(|&g| !(g > 0.0) || !g.is_finite()) {
            return Err(domain("ordinates must be positive and finite"));
        }
        let t = Self { ordinates, height, field, source: source.into(), ordinate_error: 0.0 };
        t.check_plausible();
        Ok(t)
    }

    pub fn with_ordinate_error(mut self, e: f64) -> Self {
        self.ordinate_error = e;
        self
    }

    fn check_plausible(&self) {
        if let Some(&last) = self.ordinates.last() {
            if self.height > last + 1.0 {
                log::warn!("height {} is more than 1 above the last ordinate {last}", self.height);
            }
        }
    }

    /// Parses the text of a zero file.
    pub fn parse(text: &str, field: FieldInvariants<f64>, source: impl Into<String>) -> Result<Self> {
        if text.starts_with('\u{feff}') {
            return Err(parse_err(1, "byte order mark not allowed"));
        }
        let mut ordinates = Vec::new();
        let mut height = None;
        let mut places = 0usize;
        for (i, raw) in text.split('\n').enumerate() {
            let line = i + 1;
            let raw = raw.strip_suffix('\r').unwrap_or(raw);
            if raw.contains('\r') {
                return Err(parse_err(line, "stray carriage return"));
            }
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            if let Some((key, value)) = body.split_once('=') {
                if key.trim() != "height" {
                    return Err(parse_err(line, format!("unknown directive {:?}", key.trim())));
                }
                if height.is_some() {
                    return Err(Error::Meta(format!("second height directive at line {line}")));
                }
                height = Some(parse_decimal(value.trim(), line)?.0);
                continue;
            }
            let (g, p) = parse_decimal(body, line)?;
            if !(g > 0.0) {
                return Err(parse_err(line, "ordinates must be positive"));
            }
            if let Some(&last) = ordinates.last() {
                if g < last {
                    return Err(Error::Order { line, msg: format!("{g} after {last}") });
                }
            }
            places = places.max(p);
            ordinates.push(g);
        }
        let height = match (height, ordinates.last()) {
            (Some(h), _) => h,
            (None, Some(&last)) => {
                log::warn!("no height directive; using the last ordinate {last}, which is not a certified coverage");
                last
            }
            (None, None) => return Err(Error::Meta("empty table without a height directive".into())),
        };
        let err = if ordinates.is_empty() { 0.0 } else { 10f64.powi(-(places as i32)) };
        Ok(Self::new(ordinates, height, field, source)?.with_ordinate_error(err))
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Number of listed ordinates in `[lo, hi]`.
    pub fn count_between(&self, lo: f64, hi: f64) -> usize {
        let a = self.ordinates.partition_point(|&g| g < lo);
        let b = self.ordinates.partition_point(|&g| g <= hi);
        b.saturating_sub(a)
    }

    /// Ordinates in `[lo, hi]`.
    pub fn between(&self, lo: f64, hi: f64) -> &[f64] {
        let a = self.ordinates.partition_point(|&g| g < lo);
        let b = self.ordinates.partition_point(|&g| g <= hi);
        &self.ordinates[a..b.max(a)]
    }

    /// Largest number of ordinates within `tol` of each other near `t`
    /// (`|gamma - t| <= 1`).
    pub fn max_cluster_multiplicity(&self, t: f64, tol: f64) -> usize {
        let near = self.between(t - 1.0, t + 1.0);
        let mut best = 0;
        for (i, &g) in near.iter().enumerate() {
            let k = near[i..].iter().take_while(|&&h| h - g <= tol).count();
            best = best.max(k);
        }
        best
    }
}

/// Reads a zero file; `field` is the text of a field descriptor, or `Q`.
pub fn load_zeros(path: impl AsRef<Path>, field: &str) -> Result<ZeroTable> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let field = if field.trim() == "Q" { FieldInvariants::rationals() } else { parse_field_descriptor(field)? };
    ZeroTable::parse(&text, field, path.display().to_string())
}

/// `n(T; a)`: ordinates in `[T - a, T + a]`, both ends included.
pub fn empirical_count(table: &ZeroTable, t: f64, a: f64) -> Result<usize> {
    if !(a >= 0.0) || !t.is_finite() || !a.is_finite() {
        return Err(domain(format!("window needs finite T and a >= 0, got T = {t}, a = {a}")));
    }
    if !(t - a > 0.0) {
        return Err(domain(format!("window [{}, {}] touches the real axis", t - a, t + a)));
    }
    if t + a > table.height {
        return Err(Error::Coverage(format!("window top {} exceeds table height {}", t + a, table.height)));
    }
    Ok(table.count_between(t - a, t + a))
}

/// One line of the bound-versus-count comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub t: f64,
    pub a: f64,
    pub empirical: usize,
    /// `None` outside the domain `0 < a < 2`, `T >= 10 + a`.
    pub grh_bound: Option<f64>,
    pub uncond_bound: f64,
    pub grh_slack: Option<f64>,
    pub uncond_slack: f64,
}

impl ComparisonRow {
    /// The count exceeds one of the bounds.
    pub fn violated(&self) -> bool {
        let e = self.empirical as f64;
        e > self.uncond_bound || self.grh_bound.is_some_and(|b| e > b)
    }
}

/// `(N(T + a) upper - N(T - a) lower) / 2` from the unconditional count;
/// below height 1 the lower bracket is replaced by 0.
pub fn unconditional_window_bound(field: &FieldInvariants<f64>, t: f64, a: f64) -> Result<f64> {
    let hi = trudgian_count(field, t + a)?;
    let lower = if t - a >= 1.0 { trudgian_count(field, t - a)?.lower() } else { 0.0 };
    Ok(0.5 * (hi.upper() - lower))
}

pub fn comparison_table(table: &ZeroTable, t_grid: &[f64], a_set: &[f64]) -> Result<Vec<ComparisonRow>> {
    let mut rows = Vec::with_capacity(t_grid.len() * a_set.len());
    for &t in t_grid {
        for &a in a_set {
            let empirical = empirical_count(table, t, a)?;
            let grh_bound = match bound_window(&table.field, t, a) {
                Ok(b) => Some(b.total),
                Err(Error::Domain(_)) => None,
                Err(e) => return Err(e),
            };
            let uncond_bound = unconditional_window_bound(&table.field, t, a)?;
            let e = empirical as f64;
            rows.push(ComparisonRow {
                t,
                a,
                empirical,
                grh_bound,
                uncond_bound,
                grh_slack: grh_bound.map(|b| b - e),
                uncond_slack: uncond_bound - e,
            });
        }
    }
    Ok(rows)
}

/// CSV with columns `T,a,empirical,grh_bound,uncond_bound,grh_slack,uncond_slack`;
/// out-of-domain cells are `NA`.
pub fn comparison_csv(rows: &[ComparisonRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let opt = |x: Option<f64>| x.map_or_else(|| "NA".to_string(), |v| format!("{v:.6}"));
    w.write_record(["T", "a", "empirical", "grh_bound", "uncond_bound", "grh_slack", "uncond_slack"]).expect("writing to memory");
    for r in rows {
        w.write_record([
            format!("{}", r.t),
            format!("{}", r.a),
            r.empirical.to_string(),
            opt(r.grh_bound),
            format!("{:.6}", r.uncond_bound),
            opt(r.grh_slack),
            format!("{:.6}", r.uncond_slack),
        ])
        .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("ascii output")
}

/// Path of the bundled table of the first `10^5` zeros of the Riemann zeta
/// function, relative to the workspace root.
pub const BUNDLED_ZETA_TABLE: &str = "data/zeta_zeros_1e5.txt";
