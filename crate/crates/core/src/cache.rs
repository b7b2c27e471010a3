//! On-disk memo of `m_k(b)` results: one JSON record per line. Records are
//! re-verified on load and dropped if their certificate does not check out.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::realizability::{feasible, MultiplicityVector};
use crate::solver::{solve_mk, SolveOptions, SolveResult, SolveStatus};

pub const DEFAULT_CACHE_PATH: &str = "mkb-cache.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub k: u32,
    pub b: u64,
    pub lo: u64,
    pub hi: u64,
    pub exact: bool,
    /// Multiplicities of a feasible point with sum `lo`.
    pub certificate: Vec<u32>,
    pub provenance: Vec<String>,
    pub version: String,
}

impl CacheRecord {
    pub fn from_result(r: &SolveResult) -> Self {
        CacheRecord {
            k: r.k,
            b: r.b,
            lo: r.value,
            hi: r.upper,
            exact: r.is_exact(),
            certificate: r.certificate.counts().to_vec(),
            provenance: vec![r.provenance.clone()],
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    /// Why the record cannot be trusted, if it cannot.
    pub fn problem(&self) -> Option<String> {
        if self.lo > self.hi {
            return Some(format!("lo {} exceeds hi {}", self.lo, self.hi));
        }
        if self.exact != (self.lo == self.hi) {
            return Some("exact flag disagrees with the interval".into());
        }
        let mv = match MultiplicityVector::from_counts(self.k, self.certificate.clone()) {
            Ok(mv) => mv,
            Err(e) => return Some(e.to_string()),
        };
        if mv.sum() != self.lo {
            return Some(format!("certificate sums to {}, not {}", mv.sum(), self.lo));
        }
        if !feasible(&mv, self.b) {
            return Some("certificate is infeasible".into());
        }
        None
    }

    fn to_result(&self) -> Result<SolveResult> {
        Ok(SolveResult {
            k: self.k,
            b: self.b,
            value: self.lo,
            certificate: MultiplicityVector::from_counts(self.k, self.certificate.clone())?,
            status: if self.exact { SolveStatus::Exact } else { SolveStatus::LowerBoundOnly },
            upper: self.hi,
            nodes: 0,
            provenance: "cache".into(),
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cache {
    records: BTreeMap<(u32, u64), CacheRecord>,
}

impl Cache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Loads `path`, returning the valid records and a warning for each line
    /// that was dropped. A missing file is an empty cache.
    pub fn load(path: &Path) -> Result<(Cache, Vec<String>)> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok((Cache::new(), vec![])),
            Err(e) => return Err(e.into()),
        };
        let mut cache = Cache::new();
        let mut warnings = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<CacheRecord>(line) {
                Ok(rec) => match rec.problem() {
                    None => cache.insert(rec),
                    Some(p) => warnings.push(format!("line {}: dropped k={} b={}: {p}", i + 1, rec.k, rec.b)),
                },
                Err(e) => warnings.push(format!("line {}: unreadable record: {e}", i + 1)),
            }
        }
        for w in &warnings {
            log::warn!("cache {}: {w}", path.display());
        }
        Ok((cache, warnings))
    }

    /// Writes every record to a sibling temporary file, then renames it over
    /// `path`.
    pub fn store(&self, path: &Path) -> Result<()> {
        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => Path::new("."),
        };
        let name = path
            .file_name()
            .ok_or_else(|| Error::Io(format!("{} is not a file path", path.display())))?;
        let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            for rec in self.records.values() {
                let line = serde_json::to_string(rec).map_err(|e| Error::Io(e.to_string()))?;
                writeln!(f, "{line}")?;
            }
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Keeps the tighter of the stored and the new record.
    pub fn insert(&mut self, rec: CacheRecord) {
        let key = (rec.k, rec.b);
        match self.records.get_mut(&key) {
            Some(old) => {
                if rec.lo > old.lo {
                    old.lo = rec.lo;
                    old.certificate = rec.certificate;
                    old.provenance = rec.provenance;
                }
                old.hi = old.hi.min(rec.hi);
                old.exact = old.lo == old.hi;
            }
            None => {
                self.records.insert(key, rec);
            }
        }
    }

    pub fn get(&self, k: u32, b: u64) -> Option<&CacheRecord> {
        self.records.get(&(k, b))
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> impl Iterator<Item = &CacheRecord> {
        self.records.values()
    }

    /// [`solve_mk`], answered from the cache when an exact record exists.
    pub fn solve_mk(&mut self, k: u32, b: u64, opts: &SolveOptions) -> Result<SolveResult> {
        if let Some(rec) = self.get(k, b) {
            if rec.exact {
                return rec.to_result();
            }
        }
        let r = solve_mk(k, b, opts)?;
        self.insert(CacheRecord::from_result(&r));
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_validation() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        let mut c = Cache::new();
        for b in 0..6 {
            c.solve_mk(3, b, &SolveOptions::default()).unwrap();
        }
        c.store(&path).unwrap();
        let (back, warnings) = Cache::load(&path).unwrap();
        assert!(warnings.is_empty());
        assert_eq!(back, c);

        let mut bad = c.get(3, 2).unwrap().clone();
        bad.b = 1; // the certificate (sum 4) now overloads a hyperplane
        bad.lo = 4;
        bad.hi = 4;
        let mut text = fs::read_to_string(&path).unwrap();
        text.push_str(&serde_json::to_string(&bad).unwrap());
        text.push_str("\nnot json\n");
        fs::write(&path, text).unwrap();
        let (back, warnings) = Cache::load(&path).unwrap();
        assert_eq!(warnings.len(), 2);
        assert_eq!(back.get(3, 1).unwrap().lo, 1);
    }

    #[test]
    fn missing_file_is_empty() {
        let dir = tempfile::tempdir().unwrap();
        let (c, w) = Cache::load(&dir.path().join("none.json")).unwrap();
        assert!(c.is_empty() && w.is_empty());
    }
}
