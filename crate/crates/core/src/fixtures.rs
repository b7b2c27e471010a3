//! The published tables of `m_k(b)` and `s_R(m, p)`, kept as their original
//! LaTeX source and parsed on demand. Uncertain cells stay uncertain.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MK_TABLE: &str = include_str!("../fixtures/mk_table.tex");
const SRM_TABLE: &str = include_str!("../fixtures/srm_table.tex");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixtureKind {
    Exact,
    /// One of several listed values.
    Set,
    AtMost,
    AtLeast,
    Unknown,
}

/// One published cell.
///
/// `coords` is `(k, R)` in the `m_k` table and `(m, p)` in the `s_R` table.
/// In the `m_k` table the cell stands for `m_k((2^(k-1)-1) Q + R) =
/// q_coefficient * Q + v` with `v` ranging over `values`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFixtureEntry {
    pub coords: (u64, u64),
    pub kind: FixtureKind,
    pub values: Vec<u64>,
    pub q_coefficient: Option<u64>,
}

impl TableFixtureEntry {
    /// Values the cell allows at quotient `q` (empty for `Unknown`).
    pub fn values_at(&self, q: u64) -> Vec<u64> {
        let shift = self.q_coefficient.unwrap_or(0) * q;
        self.values.iter().map(|v| v + shift).collect()
    }
}

/// Rows of a LaTeX tabular: `(line number, cells)` with `\hline` and the
/// trailing `\\` removed.
fn tabular_rows(text: &str) -> Vec<(usize, Vec<String>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let mut l = line.trim();
            while let Some(rest) = l.strip_prefix("\\hline") {
                l = rest.trim_start();
            }
            let l = l.trim_end().trim_end_matches("\\\\").trim_end();
            if l.is_empty() || l.starts_with("\\begin") || l.starts_with("\\end") {
                return None;
            }
            Some((i + 1, l.split('&').map(|c| c.trim().to_string()).collect()))
        })
        .collect()
}

fn parse_int(line: usize, s: &str) -> Result<u64> {
    s.trim().parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected an integer, found {s:?}"),
    })
}

fn header_columns(rows: &[(usize, Vec<String>)]) -> Result<(usize, Vec<u64>)> {
    let (line, cells) = rows.first().ok_or(Error::Parse {
        line: 1,
        msg: "empty table".into(),
    })?;
    let cols = cells[1..]
        .iter()
        .map(|c| parse_int(*line, c))
        .collect::<Result<Vec<_>>>()?;
    Ok((*line, cols))
}

/// Parses a cell such as `15Q+9`, `31Q+7 or 9` or `63Q+13, 15 or 17`.
fn parse_mk_cell(line: usize, cell: &str) -> Result<(u64, Vec<u64>)> {
    let (coef, rest) = cell.split_once('Q').ok_or(Error::Parse {
        line,
        msg: format!("cell {cell:?} has no Q term"),
    })?;
    let coef = parse_int(line, coef)?;
    let rest = rest.trim();
    if rest.is_empty() {
        return Ok((coef, vec![0]));
    }
    let rest = rest.strip_prefix('+').ok_or(Error::Parse {
        line,
        msg: format!("cell {cell:?}: expected `+` after the Q term"),
    })?;
    let values = rest
        .replace(" or ", ",")
        .split(',')
        .map(|v| parse_int(line, v))
        .collect::<Result<Vec<_>>>()?;
    Ok((coef, values))
}

/// Parses the `m_k((2^(k-1)-1)Q + R)` table.
pub fn parse_mk_table(text: &str) -> Result<Vec<TableFixtureEntry>> {
    let rows = tabular_rows(text);
    let (_, ks) = header_columns(&rows)?;
    let mut out = Vec::new();
    for (line, cells) in &rows[1..] {
        let r = parse_int(*line, &cells[0])?;
        if cells.len() > ks.len() + 1 {
            return Err(Error::Parse {
                line: *line,
                msg: "more cells than columns".into(),
            });
        }
        for (j, cell) in cells[1..].iter().enumerate() {
            if cell.is_empty() {
                continue;
            }
            let k = ks[j];
            let (coef, values) = parse_mk_cell(*line, cell)?;
            if coef != (1 << k) - 1 {
                return Err(Error::Parse {
                    line: *line,
                    msg: format!("Q coefficient {coef} does not match k={k}"),
                });
            }
            let kind = if values.len() == 1 { FixtureKind::Exact } else { FixtureKind::Set };
            out.push(TableFixtureEntry {
                coords: (k, r),
                kind,
                values,
                q_coefficient: Some(coef),
            });
        }
    }
    Ok(out)
}

fn parse_srm_cell(line: usize, cell: &str) -> Result<(FixtureKind, Vec<u64>)> {
    let c: String = cell.chars().filter(|&ch| ch != '$' && ch != ' ').collect();
    if c == "*" {
        return Ok((FixtureKind::Unknown, vec![]));
    }
    if let Some(n) = c.strip_prefix("*\\leqq") {
        return Ok((FixtureKind::AtMost, vec![parse_int(line, n)?]));
    }
    if let Some(n) = c.strip_prefix("*\\geqq") {
        return Ok((FixtureKind::AtLeast, vec![parse_int(line, n)?]));
    }
    Ok((FixtureKind::Exact, vec![parse_int(line, &c)?]))
}

/// Parses the `s_R(m, p)` table.
pub fn parse_srm_table(text: &str) -> Result<Vec<TableFixtureEntry>> {
    let rows = tabular_rows(text);
    let (_, ps) = header_columns(&rows)?;
    let mut out = Vec::new();
    for (line, cells) in &rows[1..] {
        let m = parse_int(*line, &cells[0])?;
        if cells.len() > ps.len() + 1 {
            return Err(Error::Parse {
                line: *line,
                msg: "more cells than columns".into(),
            });
        }
        for (j, cell) in cells[1..].iter().enumerate() {
            if cell.is_empty() {
                continue;
            }
            let (kind, values) = parse_srm_cell(*line, cell)?;
            out.push(TableFixtureEntry {
                coords: (m, ps[j]),
                kind,
                values,
                q_coefficient: None,
            });
        }
    }
    Ok(out)
}

/// The published `m_k` table, `coords = (k, R)`.
pub fn mk_fixture() -> Vec<TableFixtureEntry> {
    parse_mk_table(MK_TABLE).expect("embedded m_k table parses")
}

/// The published `s_R` table, `coords = (m, p)`.
pub fn srm_fixture() -> Vec<TableFixtureEntry> {
    parse_srm_table(SRM_TABLE).expect("embedded s_R table parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(t: &[TableFixtureEntry], a: u64, b: u64) -> &TableFixtureEntry {
        t.iter().find(|e| e.coords == (a, b)).expect("cell present")
    }

    #[test]
    fn mk_table_shape() {
        let t = mk_fixture();
        // one R=0 cell for k=2, then R < 2^(k-1)-1 for k=3..6
        assert_eq!(t.len(), 1 + 3 + 7 + 15 + 31);
        let c = find(&t, 4, 5);
        assert_eq!((c.kind, c.values.clone(), c.q_coefficient), (FixtureKind::Exact, vec![9], Some(15)));
        let c = find(&t, 5, 7);
        assert_eq!((c.kind, c.values.clone()), (FixtureKind::Set, vec![11, 13]));
        let c = find(&t, 6, 9);
        assert_eq!(c.values, vec![13, 15, 17]);
        assert_eq!(find(&t, 2, 0).values_at(4), vec![12]);
        assert_eq!(find(&t, 3, 2).values_at(1), vec![11]);
    }

    #[test]
    fn srm_table_shape() {
        let t = srm_fixture();
        assert_eq!(find(&t, 8, 5).values, vec![4]);
        assert_eq!(find(&t, 9, 7).values, vec![5]);
        let c = find(&t, 12, 8);
        assert_eq!((c.kind, c.values.clone()), (FixtureKind::AtMost, vec![5]));
        assert_eq!(find(&t, 17, 10).kind, FixtureKind::AtLeast);
        assert_eq!(find(&t, 13, 8).kind, FixtureKind::Unknown);
        assert!(t.iter().all(|e| e.coords.1 <= e.coords.0));
        // rows m=2..40 hold min(m-1, 17) cells each
        let expected: u64 = (2..=40u64).map(|m| (m - 1).min(17)).sum();
        assert_eq!(t.len() as u64, expected);
    }

    #[test]
    fn malformed_cells() {
        assert!(parse_mk_table("R & 3 \\\\\n0 & 7Q+x \\\\").is_err());
        assert!(parse_mk_table("R & 3 \\\\\n0 & 5Q+1 \\\\").is_err());
        assert!(parse_srm_table("m & 2 \\\\\n2 & two \\\\").is_err());
    }
}
