//! Tables of `s_R(m, p)` and `m_k(b)` as CSV or Markdown.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::cache::Cache;
use crate::check::CheckMode;
use crate::closed_forms::{bounds, srm_bounds};
use crate::error::Result;
use crate::solver::{solve_mk, solve_srm, SolveStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Markdown,
}

/// One cell. `value` is the exact value, `[lo,hi]`, or `?` when the search
/// ran out of budget (`lo`/`hi` still hold what is proven).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub coords: (u64, u64),
    pub value: String,
    pub lo: u64,
    pub hi: u64,
    pub provenance: String,
}

fn cell(lo: u64, hi: u64, exhausted: bool) -> String {
    if lo == hi {
        lo.to_string()
    } else if exhausted {
        "?".into()
    } else {
        format!("[{lo},{hi}]")
    }
}

/// Rows for every `p <= m` in the window, ordered by `m` then `p`.
pub fn srm_rows(
    ms: RangeInclusive<u64>,
    ps: RangeInclusive<u64>,
    mode: &CheckMode,
) -> Result<Vec<TableRow>> {
    let cells: Vec<(u64, u64)> = ms
        .flat_map(|m| ps.clone().filter(move |&p| p >= 1 && p <= m).map(move |p| (m, p)))
        .collect();
    cells
        .into_par_iter()
        .map(|(m, p)| {
            let r = match mode {
                CheckMode::BoundsOnly => srm_bounds(m, p)?,
                CheckMode::Solver(opts) => solve_srm(m, p, opts)?,
            };
            let (lo, hi) = (r.value.lo(), r.value.hi());
            Ok(TableRow {
                coords: (m, p),
                value: cell(lo, hi, r.provenance == "solver-interval"),
                lo,
                hi,
                provenance: r.provenance,
            })
        })
        .collect()
}

/// Rows for every `(k, b)` in the window, ordered by `k` then `b`. Solver
/// results go through `cache` when one is given.
pub fn mk_rows(
    ks: RangeInclusive<u32>,
    bs: RangeInclusive<u64>,
    mode: &CheckMode,
    mut cache: Option<&mut Cache>,
) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for k in ks {
        for b in bs.clone() {
            let row = match mode {
                CheckMode::BoundsOnly => {
                    let iv = bounds(k, b)?;
                    TableRow {
                        coords: (k as u64, b),
                        value: cell(iv.lo, iv.hi, false),
                        lo: iv.lo,
                        hi: iv.hi,
                        provenance: iv.hi_provenance.join("+"),
                    }
                }
                CheckMode::Solver(opts) => {
                    let r = match cache.as_deref_mut() {
                        Some(c) => c.solve_mk(k, b, opts)?,
                        None => solve_mk(k, b, opts)?,
                    };
                    TableRow {
                        coords: (k as u64, b),
                        value: cell(r.value, r.upper, r.status == SolveStatus::LowerBoundOnly),
                        lo: r.value,
                        hi: r.upper,
                        provenance: r.provenance,
                    }
                }
            };
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Renders rows under `header` (`["m", "p"]` or `["k", "b"]`).
pub fn render(header: [&str; 2], rows: &[TableRow], format: TableFormat) -> String {
    let mut out = String::new();
    let cols = [header[0], header[1], "value", "lo", "hi", "provenance"];
    match format {
        TableFormat::Csv => {
            let _ = writeln!(out, "{}", cols.join(","));
            for r in rows {
                let value = if r.value.contains(',') {
                    format!("\"{}\"", r.value)
                } else {
                    r.value.clone()
                };
                let _ = writeln!(
                    out,
                    "{},{},{value},{},{},{}",
                    r.coords.0, r.coords.1, r.lo, r.hi, r.provenance
                );
            }
        }
        TableFormat::Markdown => {
            let _ = writeln!(out, "| {} |", cols.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(cols.len()));
            for r in rows {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} |",
                    r.coords.0, r.coords.1, r.value, r.lo, r.hi, r.provenance
                );
            }
        }
    }
    out
}
