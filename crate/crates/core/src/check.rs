//! Recomputes the published tables and classifies each cell.

use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::closed_forms::{bounds, srm_bounds};
use crate::error::Result;
use crate::fixtures::{mk_fixture, srm_fixture, FixtureKind, TableFixtureEntry};
use crate::realizability::hyperplane_size;
use crate::solver::{solve_mk, solve_srm, SolveOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Agrees with the published value or bound.
    Match,
    /// Exact where the table lists several candidates or only a bound.
    Refine,
    /// Consistent, but neither side pins the value.
    Open,
    Mismatch,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "MATCH",
            Verdict::Refine => "REFINE",
            Verdict::Open => "OPEN",
            Verdict::Mismatch => "MISMATCH",
        })
    }
}

/// Compares a computed `[lo, hi]` against a published cell.
pub fn judge(kind: FixtureKind, values: &[u64], lo: u64, hi: u64) -> Verdict {
    let exact = lo == hi;
    match kind {
        FixtureKind::Exact => {
            let v = values[0];
            if !(lo..=hi).contains(&v) {
                Verdict::Mismatch
            } else if exact {
                Verdict::Match
            } else {
                Verdict::Open
            }
        }
        FixtureKind::Set => {
            if !values.iter().any(|v| (lo..=hi).contains(v)) {
                Verdict::Mismatch
            } else if exact {
                Verdict::Refine
            } else {
                Verdict::Open
            }
        }
        FixtureKind::AtMost => match (lo > values[0], exact, hi <= values[0]) {
            (true, _, _) => Verdict::Mismatch,
            (_, true, _) => Verdict::Refine,
            (_, _, true) => Verdict::Match,
            _ => Verdict::Open,
        },
        FixtureKind::AtLeast => match (hi < values[0], exact, lo >= values[0]) {
            (true, _, _) => Verdict::Mismatch,
            (_, true, _) => Verdict::Refine,
            (_, _, true) => Verdict::Match,
            _ => Verdict::Open,
        },
        FixtureKind::Unknown => {
            if exact {
                Verdict::Refine
            } else {
                Verdict::Open
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    BoundsOnly,
    Solver(SolveOptions),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckConfig {
    pub mode: CheckMode,
    /// Quotients checked for every `m_k` cell; `None` skips that table.
    pub q_range: Option<RangeInclusive<u64>>,
    /// `(m, p)` window of the `s_R` table; `None` skips it.
    pub srm_window: Option<(RangeInclusive<u64>, RangeInclusive<u64>)>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            mode: CheckMode::Solver(SolveOptions::default()),
            q_range: Some(0..=2),
            srm_window: Some((2..=40, 2..=18)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    /// `"mk"` or `"srm"`.
    pub table: String,
    /// `(k, b)` or `(m, p)`.
    pub coords: (u64, u64),
    pub published: String,
    pub lo: u64,
    pub hi: u64,
    pub verdict: Verdict,
    pub provenance: String,
}

impl fmt::Display for CellReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.coords;
        let (an, bn) = if self.table == "mk" { ("k", "b") } else { ("m", "p") };
        let got = if self.lo == self.hi {
            self.lo.to_string()
        } else {
            format!("[{},{}]", self.lo, self.hi)
        };
        write!(
            f,
            "{:<8} {} {an}={a} {bn}={b}: table {}, computed {got} ({})",
            self.verdict.to_string(),
            self.table,
            self.published,
            self.provenance
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub cells: Vec<CellReport>,
}

impl CheckReport {
    pub fn count(&self, v: Verdict) -> usize {
        self.cells.iter().filter(|c| c.verdict == v).count()
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &CellReport> {
        self.cells.iter().filter(|c| c.verdict == Verdict::Mismatch)
    }

    pub fn summary(&self) -> String {
        format!(
            "{} cells: {} MATCH, {} REFINE, {} OPEN, {} MISMATCH",
            self.cells.len(),
            self.count(Verdict::Match),
            self.count(Verdict::Refine),
            self.count(Verdict::Open),
            self.count(Verdict::Mismatch)
        )
    }
}

fn describe(kind: FixtureKind, values: &[u64]) -> String {
    let list = |vs: &[u64]| vs.iter().map(u64::to_string).collect::<Vec<_>>().join("|");
    match kind {
        FixtureKind::Exact => list(values),
        FixtureKind::Set => format!("{{{}}}", list(values)),
        FixtureKind::AtMost => format!("<={}", values[0]),
        FixtureKind::AtLeast => format!(">={}", values[0]),
        FixtureKind::Unknown => "*".into(),
    }
}

fn mk_interval(k: u32, b: u64, mode: &CheckMode) -> Result<(u64, u64, String)> {
    match mode {
        CheckMode::BoundsOnly => {
            let iv = bounds(k, b)?;
            Ok((iv.lo, iv.hi, "bounds".into()))
        }
        CheckMode::Solver(opts) => {
            let r = solve_mk(k, b, opts)?;
            Ok((r.value, r.upper, r.provenance))
        }
    }
}

fn srm_interval(m: u64, p: u64, mode: &CheckMode) -> Result<(u64, u64, String)> {
    let r = match mode {
        CheckMode::BoundsOnly => srm_bounds(m, p)?,
        CheckMode::Solver(opts) => solve_srm(m, p, opts)?,
    };
    Ok((r.value.lo(), r.value.hi(), r.provenance))
}

/// Checks the given fixtures (normally [`mk_fixture`] and [`srm_fixture`]).
pub fn check_entries(
    mk: &[TableFixtureEntry],
    srm: &[TableFixtureEntry],
    cfg: &CheckConfig,
) -> Result<CheckReport> {
    let mut cells = Vec::new();
    if let Some(qs) = &cfg.q_range {
        for e in mk {
            let (k, r) = (e.coords.0 as u32, e.coords.1);
            for q in qs.clone() {
                let b = hyperplane_size(k) * q + r;
                let values = e.values_at(q);
                let (lo, hi, provenance) = mk_interval(k, b, &cfg.mode)?;
                cells.push(CellReport {
                    table: "mk".into(),
                    coords: (k as u64, b),
                    published: describe(e.kind, &values),
                    lo,
                    hi,
                    verdict: judge(e.kind, &values, lo, hi),
                    provenance,
                });
            }
        }
    }
    if let Some((ms, ps)) = &cfg.srm_window {
        for e in srm {
            let (m, p) = e.coords;
            if !ms.contains(&m) || !ps.contains(&p) {
                continue;
            }
            let (lo, hi, provenance) = srm_interval(m, p, &cfg.mode)?;
            cells.push(CellReport {
                table: "srm".into(),
                coords: (m, p),
                published: describe(e.kind, &e.values),
                lo,
                hi,
                verdict: judge(e.kind, &e.values, lo, hi),
                provenance,
            });
        }
    }
    Ok(CheckReport { cells })
}

/// Checks the published tables.
pub fn check_paper(cfg: &CheckConfig) -> Result<CheckReport> {
    check_entries(&mk_fixture(), &srm_fixture(), cfg)
}
