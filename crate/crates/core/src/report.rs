//! Shared report rendering: a versioned JSON envelope and markdown tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::corpus::{CheckOutcome, CorpusReport};
use crate::duality::FunctionalEquation;
use crate::graded::HilbertSeries;
use crate::resolution::BigradedDimensions;

/// Version of every JSON document the CLI emits.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: u32,
    pub kind: String,
    pub data: T,
}

pub fn envelope<T: Serialize>(kind: &str, data: T) -> Envelope<T> {
    Envelope {
        schema: SCHEMA_VERSION,
        kind: kind.to_string(),
        data,
    }
}

/// One nonzero entry of a bigraded table (JSON maps cannot have pair keys).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRow {
    pub s: i32,
    pub t: i32,
    pub dim: usize,
}

pub fn dim_rows(dims: &BigradedDimensions) -> Vec<DimRow> {
    dims.iter().map(|(&(s, t), &dim)| DimRow { s, t, dim }).collect()
}

/// Rows `s`, columns `t`, blank for zero.
pub fn dims_markdown(dims: &BigradedDimensions, row: &str, col: &str) -> String {
    if dims.is_empty() {
        return "(all zero)\n".to_string();
    }
    let ts: Vec<i32> = {
        let mut v: Vec<i32> = dims.keys().map(|&(_, t)| t).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let mut rows: BTreeMap<i32, BTreeMap<i32, usize>> = BTreeMap::new();
    for (&(s, t), &d) in dims {
        rows.entry(s).or_default().insert(t, d);
    }
    let mut out = format!("| {row} \\ {col} |");
    for t in &ts {
        let _ = write!(out, " {t} |");
    }
    out.push_str("\n|---|");
    out.push_str(&"---|".repeat(ts.len()));
    out.push('\n');
    for (s, cols) in &rows {
        let _ = write!(out, "| {s} |");
        for t in &ts {
            match cols.get(t) {
                Some(d) => {
                    let _ = write!(out, " {d} |");
                }
                None => out.push_str("  |"),
            }
        }
        out.push('\n');
    }
    out
}

/// Dimensions by total degree.
pub fn totals_markdown(totals: &BTreeMap<i32, usize>) -> String {
    let mut out = String::from("| degree | dim |\n|---|---|\n");
    for (n, d) in totals {
        let _ = writeln!(out, "| {n} | {d} |");
    }
    out
}

/// Series, r, ε, e, fe_shift, Ext shift and their difference.
pub fn functional_equation_markdown(series: &HilbertSeries, fe: &FunctionalEquation, ext_shift: Option<i32>) -> String {
    let mut out = String::from("| series | r | ε | e | fe_shift | Ext shift | fe_shift - shift |\n|---|---|---|---|---|---|---|\n");
    let shift = ext_shift.map_or("-".to_string(), |s| s.to_string());
    match fe.report() {
        Some(r) => {
            let diff = ext_shift.map_or("-".to_string(), |s| (r.fe_shift - s).to_string());
            let _ = writeln!(
                out,
                "| {series} | {} | {} | {} | {} | {shift} | {diff} |",
                r.krull_dim, r.epsilon, r.exponent, r.fe_shift
            );
        }
        None => {
            let _ = writeln!(out, "| {series} | {} | no solution | | | {shift} | |", series.krull_dim());
        }
    }
    out
}

pub fn corpus_markdown(report: &CorpusReport) -> String {
    let mut out = String::from("| entry | status | p | check | result | expected | found |\n|---|---|---|---|---|---|---|\n");
    for r in &report.results {
        let outcome = match r.outcome {
            CheckOutcome::Pass => "pass",
            CheckOutcome::Fail => "FAIL",
            CheckOutcome::Recorded => "recorded",
        };
        let status = serde_json::to_value(r.status)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "| {} | {status} | {} | {} | {outcome} | {} | {} |",
            r.entry,
            r.prime.map_or("-".to_string(), |p| p.to_string()),
            escape(&r.check),
            escape(r.expected.as_deref().unwrap_or("")),
            escape(r.found.as_deref().unwrap_or(&r.detail)),
        );
    }
    let failed: Vec<&str> = report.failures().map(|r| r.entry.as_str()).collect();
    let _ = writeln!(
        out,
        "\n{} checks, {} failed; theorem checks {}.",
        report.results.len(),
        failed.len(),
        if report.ok { "all pass" } else { "FAIL" }
    );
    for r in report.failures().filter(|r| !r.trace.is_empty() || !r.detail.is_empty()) {
        let _ = writeln!(out, "\n### {} / {}\n\n{}", r.entry, r.check, r.detail);
        for line in &r.trace {
            let _ = writeln!(out, "- {line}");
        }
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_layout() {
        let mut dims = BigradedDimensions::new();
        dims.insert((0, 0), 1);
        dims.insert((1, -2), 2);
        let md = dims_markdown(&dims, "s", "t");
        assert_eq!(md, "| s \\ t | -2 | 0 |\n|---|---|---|\n| 0 |  | 1 |\n| 1 | 2 |  |\n");
        let rows = dim_rows(&dims);
        assert_eq!(rows[1], DimRow { s: 1, t: -2, dim: 2 });
        let json = serde_json::to_string(&envelope("tor", rows)).unwrap();
        assert!(json.starts_with("{\"schema\":1,\"kind\":\"tor\""));
    }
}
