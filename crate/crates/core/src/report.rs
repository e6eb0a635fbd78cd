//! Serialization of measures and reports, and the exact-versus-series tables.
//!
//! Exact rationals are written as `"num/den"` strings (integers without a
//! denominator); irrational values as floats with 12 significant digits.
//! JSON objects have sorted keys, so identical inputs give identical bytes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::bookkeeping::{atiyah_verdict, BettiLedger, Verdict};
use crate::error::Error;
use crate::linalg::CountingMeasure;
use crate::ring::{even_moments_partial, projector_from_moments};
use crate::spectra::{theoretical_moment, theoretical_projector, ConvergenceReport, SeriesValue};

/// Slack added to every tail bound when comparing exact and series values.
pub const SERIES_SLACK: f64 = 1e-6;

pub const MEASURE_CSV_HEADER: &str = "lambda,multiplicity,fraction_num,fraction_den";

/// `%.12g`-style formatting.
pub fn format_float(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".into() } else { v.to_string() };
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-4..12).contains(&exp) {
        return format!("{v:.11e}");
    }
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{v:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn format_rational(r: &BigRational) -> String {
    r.to_string()
}

fn rational_value(r: &BigRational) -> Value {
    Value::String(format_rational(r))
}

fn point_label(value: f64, exact: Option<i64>) -> String {
    exact.map_or_else(|| format_float(value), |e| e.to_string())
}

pub fn measure_csv(m: &CountingMeasure) -> String {
    let mut out = String::from(MEASURE_CSV_HEADER);
    out.push('\n');
    for p in &m.points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            point_label(p.value, p.exact),
            p.multiplicity,
            p.fraction.numer(),
            p.fraction.denom()
        ));
    }
    out
}

pub fn measure_json(m: &CountingMeasure) -> Value {
    let points: Vec<Value> = m
        .points
        .iter()
        .map(|p| {
            json!({
                "lambda": point_label(p.value, p.exact),
                "multiplicity": p.multiplicity,
                "fraction": rational_value(&p.fraction),
            })
        })
        .collect();
    json!({
        "level": m.level,
        "dim": m.dim,
        "total_fraction": rational_value(&m.total_fraction()),
        "points": points,
    })
}

pub fn convergence_json(r: &ConvergenceReport) -> Value {
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            let ranks: Vec<Value> =
                row.result.ranks.per_prime.iter().map(|(p, rank)| json!({"prime": p, "rank": rank})).collect();
            json!({
                "level": row.level,
                "dim": row.result.dim,
                "multiplicity": row.result.multiplicity,
                "fraction": rational_value(&row.result.fraction),
                "distance": rational_value(&row.distance),
                "distance_approx": format_float(row.distance.to_f64().unwrap_or(f64::NAN)),
                "ranks": ranks,
            })
        })
        .collect();
    json!({
        "rep": r.kind.to_string(),
        "lambda": r.lambda,
        "target": rational_value(&r.target),
        "rows": rows,
    })
}

/// One `k` of an exact-versus-series comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesRow {
    pub k: usize,
    pub exact: BigRational,
    pub series: SeriesValue,
    pub passed: bool,
}

/// Rows for `k` up to `max_k`, stopping early if the support ceiling is hit.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesTable {
    pub kind: &'static str,
    pub q_max: u32,
    pub rows: Vec<SeriesRow>,
    /// Set when fewer rows than requested could be computed.
    pub stopped_by: Option<Error>,
}

impl SeriesTable {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn is_partial(&self) -> bool {
        self.stopped_by.is_some()
    }
}

fn compare(exact: &BigRational, series: &SeriesValue) -> bool {
    series.agrees_with(exact.to_f64().unwrap_or(f64::NAN), SERIES_SLACK)
}

/// `tau(A^2k)` against the truncated limit measure, `k = 0..=max_k`.
pub fn moment_table(max_k: usize, q_max: u32, support_limit: usize) -> crate::Result<SeriesTable> {
    let (moments, stopped_by) = even_moments_partial(max_k, support_limit);
    let rows = moments
        .into_iter()
        .enumerate()
        .map(|(k, exact)| {
            let series = theoretical_moment(k as u32, q_max)?;
            let passed = compare(&exact, &series);
            Ok(SeriesRow { k, exact, series, passed })
        })
        .collect::<crate::Result<Vec<_>>>()?;
    Ok(SeriesTable { kind: "moments", q_max, rows, stopped_by })
}

/// `s_k` against the truncated limit measure, `k = 1..=max_k`; a row also
/// requires `s_k > 1/3` and, past the first, `s_k < s_(k-1)`.
pub fn projector_table(max_k: usize, q_max: u32, support_limit: usize) -> crate::Result<SeriesTable> {
    let (moments, stopped_by) = even_moments_partial(max_k, support_limit);
    let s = projector_from_moments(&moments, moments.len() - 1);
    let third = BigRational::new(BigInt::from(1), BigInt::from(3));
    let mut rows = Vec::with_capacity(s.len());
    for (idx, exact) in s.iter().enumerate() {
        let k = idx + 1;
        let series = theoretical_projector(k as u32, q_max)?;
        let decreasing = idx == 0 || exact < &s[idx - 1];
        let passed = compare(exact, &series) && exact > &third && decreasing;
        rows.push(SeriesRow { k, exact: exact.clone(), series, passed });
    }
    Ok(SeriesTable { kind: "projector", q_max, rows, stopped_by })
}

pub fn series_json(t: &SeriesTable) -> Value {
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|r| {
            json!({
                "k": r.k,
                "exact": rational_value(&r.exact),
                "series": format_float(r.series.value),
                "series_exact": rational_value(&r.series.exact),
                "tail_bound": format_float(r.series.tail_bound),
                "status": if r.passed { "PASS" } else { "FAIL" },
            })
        })
        .collect();
    json!({
        "kind": t.kind,
        "q_max": t.q_max,
        "partial": t.is_partial(),
        "stopped_by": t.stopped_by.as_ref().map(|e| e.to_string()),
        "rows": rows,
    })
}

pub fn series_csv(t: &SeriesTable) -> String {
    let mut out = String::from("k,exact,series,tail_bound,status\n");
    for r in &t.rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.k,
            format_rational(&r.exact),
            format_float(r.series.value),
            format_float(r.series.tail_bound),
            if r.passed { "PASS" } else { "FAIL" }
        ));
    }
    out
}

/// `{"chi", "bettis", "verdict"}` listing the known Betti numbers, with the
/// verdict taken on `verdict_on`.
pub fn bookkeeping_json(ledger: &BettiLedger, verdict_on: &BigRational) -> Value {
    let bettis: serde_json::Map<String, Value> = ledger
        .bettis
        .iter()
        .enumerate()
        .filter_map(|(p, b)| b.as_ref().map(|b| (p.to_string(), rational_value(b))))
        .collect();
    let verdict: Verdict = atiyah_verdict(verdict_on);
    json!({
        "chi": ledger.chi(),
        "bettis": bettis,
        "verdict": verdict.to_string(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values built from strings and integers serialize");
    s.push('\n');
    s
}
