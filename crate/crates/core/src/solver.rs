//! Exact `m_k(b)` by branch and bound, the LP relaxation's vertices, and
//! `s_R(m, p)` assembled from solver values.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{
    bounds, mk_lower, periodic_hypothesis, realizing_matrix, srm_boundary, srm_bounds, srm_cap,
    InvariantResult, SrmValue, MAX_B,
};
use crate::error::{Error, Result};
use crate::gf2::{check_dim, dot_bits, Gf2Vec, Incidence};
use crate::realizability::{feasible, hyperplane_size, MultiplicityVector};

/// Knobs for [`solve_mk`] and [`solve_srm`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub node_budget: u64,
    pub use_parity_pruning: bool,
    pub use_symmetry: bool,
    /// Turns off parity, symmetry, warm starts and every closed-form
    /// shortcut; only the generic slack bound prunes.
    pub oracle_mode: bool,
    /// Single-threaded search with a stable certificate.
    pub deterministic: bool,
    /// Answer from the bound engine when its interval is already exact, and
    /// stop searching once the incumbent meets its upper bound. Off means the
    /// search has to prove the optimum on its own (it may still start from a
    /// constructed point).
    pub use_closed_forms: bool,
    /// Wall-clock limit for one search, in milliseconds. Hitting it counts
    /// as budget exhaustion.
    pub time_limit_ms: Option<u64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            node_budget: 100_000_000,
            use_parity_pruning: true,
            use_symmetry: true,
            oracle_mode: false,
            deterministic: true,
            use_closed_forms: true,
            time_limit_ms: None,
        }
    }
}

impl SolveOptions {
    pub fn oracle() -> Self {
        SolveOptions {
            oracle_mode: true,
            ..Self::default()
        }.normalized()
    }

    /// Pure search: no answers from formulas, but all pruning on.
    pub fn search_only() -> Self {
        SolveOptions {
            use_closed_forms: false,
            ..Self::default()
        }
    }

    pub fn with_budget(mut self, node_budget: u64) -> Self {
        self.node_budget = node_budget;
        self
    }

    /// Applies the implications of `oracle_mode`.
    pub fn normalized(mut self) -> Self {
        if self.oracle_mode {
            self.use_parity_pruning = false;
            self.use_symmetry = false;
            self.use_closed_forms = false;
        }
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Exact,
    LowerBoundOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub k: u32,
    pub b: u64,
    pub value: u64,
    pub certificate: MultiplicityVector,
    pub status: SolveStatus,
    /// Proven upper bound; equals `value` when exact.
    pub upper: u64,
    pub nodes: u64,
    pub provenance: String,
}

impl SolveResult {
    pub fn is_exact(&self) -> bool {
        self.status == SolveStatus::Exact
    }
}

// ---------------------------------------------------------------------------
// LP relaxation

/// A point with exact rational coordinates in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoint {
    pub k: u32,
    pub coords: Vec<Ratio<i64>>,
}

impl RationalPoint {
    pub fn sum(&self) -> Ratio<i64> {
        self.coords.iter().copied().sum()
    }

    /// `∑_{(u,v)=0} x_v`.
    pub fn hyperplane_sum(&self, u: &Gf2Vec) -> Ratio<i64> {
        (1..=self.coords.len() as u32)
            .filter(|&v| dot_bits(u.bits(), v) == 0)
            .map(|v| self.coords[v as usize - 1])
            .sum()
    }
}

fn check_lp_args(k: u32, b: u64) -> Result<()> {
    check_dim(k)?;
    if b > MAX_B {
        return Err(Error::OutOfRange(format!("b={b} exceeds {MAX_B}")));
    }
    Ok(())
}

/// Optimum of the LP relaxation, `(2^k - 1) b / (2^(k-1) - 1)`.
pub fn lp_optimum(k: u32, b: u64) -> Result<Ratio<i64>> {
    check_lp_args(k, b)?;
    let n = (1i64 << k) - 1;
    Ok(Ratio::new(n * b as i64, hyperplane_size(k) as i64))
}

/// `floor` of the LP optimum, lowered to `b`'s parity when `parity` is set.
fn lp_cap(k: u32, b: u64, parity: bool) -> u64 {
    let n = (1u64 << k) - 1;
    let cap = n * b / hyperplane_size(k);
    if parity && (cap + b) % 2 == 1 {
        cap - 1
    } else {
        cap
    }
}

/// The vertex of `P(b) ∩ H(m)` cut out by every constraint except `u`'s.
/// Coordinates are `m - 2b` on `u^⊥` and `2b - m + (m - b)/2^(k-2)` off it.
pub fn vertex_coords(k: u32, b: u64, m: u64, u: &Gf2Vec) -> Result<RationalPoint> {
    check_lp_args(k, b)?;
    if u.dim() != k {
        return Err(Error::DimensionMismatch { left: u.dim(), right: k });
    }
    if u.is_zero() {
        return Err(Error::OutOfRange("u must be nonzero".into()));
    }
    if Ratio::from_integer(m as i64) > lp_optimum(k, b)? {
        return Err(Error::OutOfRange(format!(
            "m={m} exceeds the LP optimum for k={k}, b={b}"
        )));
    }
    let (b, m) = (b as i64, m as i64);
    let inside = Ratio::from_integer(m - 2 * b);
    let outside = Ratio::from_integer(2 * b - m) + Ratio::new(m - b, 1i64 << (k - 2));
    let coords = (1..(1u32 << k))
        .map(|v| if dot_bits(u.bits(), v) == 0 { inside } else { outside })
        .collect();
    let point = RationalPoint { k, coords };
    // both identities are cheap; a failure would be an arithmetic bug
    debug_assert_eq!(point.sum(), Ratio::from_integer(m));
    Ok(point)
}

// ---------------------------------------------------------------------------
// search

struct Shared {
    best: AtomicU64,
    stop_at: u64,
    exhausted: AtomicBool,
    deadline: Option<Instant>,
}

impl Shared {
    fn done(&self) -> bool {
        self.best.load(Ordering::Relaxed) >= self.stop_at || self.exhausted.load(Ordering::Relaxed)
    }
}

struct Searcher<'a> {
    inc: &'a Incidence,
    shared: &'a Shared,
    n: usize,
    h: u64,
    b: u64,
    parity: bool,
    symmetry: bool,
    budget: u64,
    nodes: u64,
    slack: Vec<i64>,
    assign: Vec<u32>,
    cur: u64,
    best_local: u64,
    best_assign: Option<Vec<u32>>,
    acc: Vec<i64>,
}

impl<'a> Searcher<'a> {
    fn new(inc: &'a Incidence, shared: &'a Shared, k: u32, b: u64, opts: &SolveOptions) -> Self {
        let n = (1usize << k) - 1;
        Searcher {
            inc,
            shared,
            n,
            h: hyperplane_size(k),
            b,
            parity: opts.use_parity_pruning,
            symmetry: opts.use_symmetry,
            budget: opts.node_budget,
            nodes: 0,
            slack: vec![b as i64; n],
            assign: vec![0; n],
            cur: 0,
            best_local: 0,
            best_assign: None,
            acc: vec![0; n],
        }
    }

    fn best(&self) -> u64 {
        self.shared.best.load(Ordering::Relaxed)
    }

    fn apply(&mut self, i: usize, x: i64) {
        let slack = &mut self.slack;
        self.inc.for_each(i, |u| slack[u] -= x);
        self.assign[i] = (self.assign[i] as i64 + x) as u32;
        self.cur = (self.cur as i64 + x) as u64;
    }

    /// Upper bound on the best completion of the current partial point, and
    /// the largest value variable `i` may take.
    ///
    /// Each remaining `v` is capped by its tightest hyperplane. A unit of any
    /// `a_v` uses up `h` units of slack, but only slack on hyperplanes that
    /// still meet a live variable counts, and no hyperplane can absorb more
    /// than the caps of its live variables.
    fn bound(&mut self, i: usize, symcap: u32) -> (u64, u32) {
        let acc = &mut self.acc;
        acc.iter_mut().for_each(|a| *a = 0);
        let mut cap_sum = 0u64;
        let mut cap_i = 0;
        for v in i..self.n {
            let mut c = symcap as i64;
            let slack = &self.slack;
            self.inc.for_each(v, |u| c = c.min(slack[u]));
            if v == i {
                cap_i = c as u32;
            }
            if c > 0 {
                cap_sum += c as u64;
                self.inc.for_each(v, |u| acc[u] += c);
            }
        }
        let usable: i64 = self
            .slack
            .iter()
            .zip(acc.iter())
            .map(|(&s, &a)| s.min(a))
            .sum();
        let extra = cap_sum.min(usable as u64 / self.h);
        let mut bound = self.cur + extra;
        if self.parity && (bound + self.b) % 2 == 1 {
            // the optimum has b's parity; a bound below cur is harmless
            bound = bound.saturating_sub(1);
        }
        (bound, cap_i)
    }

    fn node(&mut self, i: usize, symcap: u32) {
        if self.shared.done() {
            return;
        }
        self.nodes += 1;
        let late = self.nodes % 4096 == 0
            && self.shared.deadline.is_some_and(|d| Instant::now() >= d);
        if self.nodes > self.budget || late {
            self.shared.exhausted.store(true, Ordering::Relaxed);
            return;
        }
        if i == self.n {
            if self.cur > self.best() {
                self.shared.best.fetch_max(self.cur, Ordering::Relaxed);
                self.best_local = self.cur;
                self.best_assign = Some(self.assign.clone());
            }
            return;
        }
        let (bound, cap) = self.bound(i, symcap);
        if bound <= self.best() {
            return;
        }
        let is_basis = (i + 1).is_power_of_two();
        for x in (0..=cap).rev() {
            if x > 0 {
                self.apply(i, x as i64);
            }
            let child = if self.symmetry && is_basis { x } else { symcap };
            self.node(i + 1, child);
            if x > 0 {
                self.apply(i, -(x as i64));
            }
            if self.shared.done() {
                return;
            }
        }
    }
}

struct SearchOutcome {
    best: Option<(u64, Vec<u32>)>,
    exhausted: bool,
    nodes: u64,
}

/// Looks for a point with sum above `floor`; stops early once `stop_at` is
/// reached.
fn search(k: u32, b: u64, floor: u64, stop_at: u64, opts: &SolveOptions) -> SearchOutcome {
    let inc = Incidence::new(k);
    let shared = Shared {
        best: AtomicU64::new(floor),
        stop_at,
        exhausted: AtomicBool::new(false),
        deadline: opts
            .time_limit_ms
            .map(|ms| Instant::now() + Duration::from_millis(ms)),
    };
    if floor >= stop_at {
        return SearchOutcome { best: None, exhausted: false, nodes: 0 };
    }
    let (best, nodes) = if opts.deterministic {
        let mut s = Searcher::new(&inc, &shared, k, b, opts);
        s.node(0, u32::MAX);
        let best = s.best_assign.take().map(|a| (s.best_local, a));
        (best, s.nodes)
    } else {
        // split on the value of the first variable
        let top = b.min(u32::MAX as u64) as u32;
        let found = Mutex::new(Vec::new());
        let nodes = AtomicU64::new(0);
        let values: Vec<u32> = (0..=top).rev().collect();
        values.into_par_iter().for_each(|x| {
            let mut s = Searcher::new(&inc, &shared, k, b, opts);
            s.nodes = 1;
            if x > 0 {
                s.apply(0, x as i64);
            }
            let child = if opts.use_symmetry { x } else { u32::MAX };
            s.node(1, child);
            nodes.fetch_add(s.nodes, Ordering::Relaxed);
            if let Some(a) = s.best_assign.take() {
                found.lock().expect("result lock").push((s.best_local, x, a));
            }
        });
        let mut found = found.into_inner().expect("result lock");
        // highest value wins; ties go to the larger first coordinate
        found.sort_by(|p, q| (q.0, q.1).cmp(&(p.0, p.1)));
        let best = found.into_iter().next().map(|(v, _, a)| (v, a));
        (best, nodes.into_inner())
    };
    SearchOutcome {
        best,
        exhausted: shared.exhausted.load(Ordering::Relaxed),
        nodes,
    }
}

fn check_solver_args(k: u32, b: u64) -> Result<()> {
    check_dim(k)?;
    if b > u32::MAX as u64 / 4 {
        return Err(Error::OutOfRange(format!("b={b} is too large to search")));
    }
    Ok(())
}

/// `m_k(b)`: the largest `∑ a_v` over non-negative integers with every
/// hyperplane load at most `b`.
///
/// Unless `oracle_mode` is set the search starts from the best constructed
/// point. On budget exhaustion the best point found is returned with status
/// `LowerBoundOnly`, alongside a proven upper bound.
pub fn solve_mk(k: u32, b: u64, opts: &SolveOptions) -> Result<SolveResult> {
    check_solver_args(k, b)?;
    let opts = opts.normalized();
    let interval = if opts.use_closed_forms { Some(bounds(k, b)?) } else { None };
    if let Some(iv) = &interval {
        if iv.exact() {
            let certificate = iv.certificate.clone().expect("bounds carry a certificate");
            return Ok(SolveResult {
                k,
                b,
                value: iv.lo,
                certificate,
                status: SolveStatus::Exact,
                upper: iv.hi,
                nodes: 0,
                provenance: "bounds".into(),
            });
        }
    }

    let (start, start_cert) = if opts.oracle_mode {
        (0, MultiplicityVector::zeros(k)?)
    } else {
        let lower = mk_lower(k, b)?;
        (lower.value, lower.certificate)
    };
    let mut stop_at = lp_cap(k, b, opts.use_parity_pruning);
    if let Some(iv) = &interval {
        stop_at = stop_at.min(iv.hi);
    }
    let out = search(k, b, start, stop_at, &opts);
    let (value, certificate) = match out.best {
        Some((v, counts)) => (v, MultiplicityVector::from_counts(k, counts)?),
        None => (start, start_cert),
    };
    if certificate.sum() != value || !feasible(&certificate, b) {
        return Err(Error::Certificate(format!("k={k}, b={b}: solver point is infeasible")));
    }
    let (status, upper) = if out.exhausted {
        let upper = interval
            .map(|iv| iv.hi)
            .unwrap_or_else(|| lp_cap(k, b, opts.use_parity_pruning));
        (SolveStatus::LowerBoundOnly, upper)
    } else {
        (SolveStatus::Exact, value)
    };
    Ok(SolveResult {
        k,
        b,
        value,
        certificate,
        status,
        upper,
        nodes: out.nodes,
        provenance: if opts.oracle_mode { "oracle-search".into() } else { "search".into() },
    })
}

enum Decision {
    Yes(MultiplicityVector),
    No,
    Unknown,
}

/// Whether `m_k(b) >= target`, with a witness when it is.
fn decide_at_least(k: u32, b: u64, target: u64, opts: &SolveOptions) -> Result<Decision> {
    if !opts.oracle_mode {
        let lower = mk_lower(k, b)?;
        if lower.value >= target {
            return Ok(Decision::Yes(lower.certificate));
        }
    }
    if opts.use_closed_forms {
        let iv = bounds(k, b)?;
        if iv.hi < target {
            return Ok(Decision::No);
        }
    }
    if lp_cap(k, b, opts.use_parity_pruning) < target {
        return Ok(Decision::No);
    }
    let out = search(k, b, target - 1, target, opts);
    match out.best {
        Some((_, counts)) => Ok(Decision::Yes(MultiplicityVector::from_counts(k, counts)?)),
        None if out.exhausted => Ok(Decision::Unknown),
        None => Ok(Decision::No),
    }
}

/// `s_R(m, p)` from `s_R(m, p) >= k ⟺ m <= m_k(p - 1)`, scanning `k`
/// upwards. Budget exhaustion leaves an interval.
pub fn solve_srm(m: u64, p: u64, opts: &SolveOptions) -> Result<InvariantResult> {
    if p == 0 || p > m {
        return Err(Error::OutOfRange(format!("need 1 <= p <= m, got m={m}, p={p}")));
    }
    let opts = opts.normalized();
    if opts.use_closed_forms {
        if srm_boundary(m, p)?.is_some() {
            return srm_bounds(m, p);
        }
        let quick = srm_bounds(m, p)?;
        if quick.value.exact().is_some() {
            return Ok(quick);
        }
    }
    let b = p - 1;
    check_solver_args(2, b)?;
    let cap = srm_cap(m, p);
    let (mut lo, mut hi) = (1, cap);
    let mut witness = None;
    for k in 2..=cap.min(16) {
        match decide_at_least(k as u32, b, m, &opts)? {
            Decision::Yes(c) => {
                lo = k;
                witness = Some(c);
            }
            Decision::No => {
                hi = k - 1;
                break;
            }
            Decision::Unknown => {}
        }
    }
    let certificate = match &witness {
        Some(c) => Some(realizing_matrix(c, m, p)?),
        None => None,
    };
    let value = SrmValue::from_range(lo, hi);
    Ok(InvariantResult {
        m,
        p,
        value,
        certificate,
        provenance: if value.exact().is_some() { "solver".into() } else { "solver-interval".into() },
    })
}

// ---------------------------------------------------------------------------
// periodicity scan

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureEntry {
    pub b: u64,
    pub value: Option<u64>,
    pub shifted: Option<u64>,
    /// `None` when either side could not be solved exactly.
    pub holds: Option<bool>,
    /// The shift identity is already proven for this `b`.
    pub covered: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub k: u32,
    pub entries: Vec<ConjectureEntry>,
}

impl ConjectureReport {
    pub fn violations(&self) -> impl Iterator<Item = &ConjectureEntry> {
        self.entries.iter().filter(|e| e.holds == Some(false))
    }

    pub fn skipped(&self) -> usize {
        self.entries.iter().filter(|e| e.holds.is_none()).count()
    }
}

/// Checks `m_k(b + 2^(k-1) - 1) = m_k(b) + 2^k - 1` for `b = 0..=b_max`.
pub fn conjecture_scan(k: u32, b_max: u64, opts: &SolveOptions) -> Result<ConjectureReport> {
    check_dim(k)?;
    let h = hyperplane_size(k);
    let shift = (1u64 << k) - 1;
    let mut entries = Vec::new();
    for b in 0..=b_max {
        let lo = solve_mk(k, b, opts)?;
        let hi = solve_mk(k, b + h, opts)?;
        let value = lo.is_exact().then_some(lo.value);
        let shifted = hi.is_exact().then_some(hi.value);
        let holds = match (value, shifted) {
            (Some(v), Some(s)) => Some(s == v + shift),
            _ => None,
        };
        if holds == Some(false) {
            log::warn!(
                "periodicity fails at k={k}, b={b}: m({})={} but m({b})+{shift}={}",
                b + h,
                hi.value,
                lo.value + shift
            );
        }
        entries.push(ConjectureEntry {
            b,
            value,
            shifted,
            holds,
            covered: periodic_hypothesis(k, b),
        });
    }
    Ok(ConjectureReport { k, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lp_values() {
        assert_eq!(lp_optimum(3, 3).unwrap(), Ratio::from_integer(7));
        assert_eq!(lp_optimum(2, 1).unwrap(), Ratio::from_integer(3));
        assert_eq!(lp_optimum(4, 5).unwrap(), Ratio::new(75, 7));
        assert!(lp_optimum(1, 1).is_err());
    }

    #[test]
    fn vertex_identities() {
        for (k, b, m) in [(3, 3, 7), (3, 2, 4), (4, 4, 8), (5, 7, 13)] {
            for ub in 1..(1u32 << k) {
                let u = Gf2Vec::new(k, ub).unwrap();
                let pt = vertex_coords(k, b, m, &u).unwrap();
                assert_eq!(pt.sum(), Ratio::from_integer(m as i64));
                for ub2 in (1..(1u32 << k)).filter(|&x| x != ub) {
                    let u2 = Gf2Vec::new(k, ub2).unwrap();
                    assert_eq!(pt.hyperplane_sum(&u2), Ratio::from_integer(b as i64));
                }
            }
        }
        let u = Gf2Vec::new(3, 5).unwrap();
        assert!(vertex_coords(3, 3, 8, &u).is_err());
        assert!(vertex_coords(3, 3, 7, &Gf2Vec::zero(3).unwrap()).is_err());
    }

    #[test]
    fn small_vertex_shape() {
        let u = Gf2Vec::new(3, 1).unwrap();
        let pt = vertex_coords(3, 2, 4, &u).unwrap();
        for v in 1..8u32 {
            let want = if dot_bits(1, v) == 0 { 0 } else { 1 };
            assert_eq!(pt.coords[v as usize - 1], Ratio::from_integer(want));
        }
    }

    #[test]
    fn node_bound_never_undercuts_best_completion() {
        use std::collections::HashMap;
        let k = 3;
        let inc = Incidence::new(k);
        let opts = SolveOptions::oracle();
        for b in 0..=3u64 {
            // best completion of every prefix, by brute force over all points
            let mut best: HashMap<Vec<u32>, u64> = HashMap::new();
            let base = b as u32 + 1;
            for code in 0..base.pow(7) {
                let counts: Vec<u32> = (0..7).map(|i| code / base.pow(i) % base).collect();
                let mv = MultiplicityVector::from_counts(k, counts.clone()).unwrap();
                if !feasible(&mv, b) {
                    continue;
                }
                for j in 0..=7 {
                    let e = best.entry(counts[..j].to_vec()).or_insert(0);
                    *e = (*e).max(mv.sum());
                }
            }
            for (prefix, &opt) in &best {
                let shared = Shared {
                    best: AtomicU64::new(0),
                    stop_at: u64::MAX,
                    exhausted: AtomicBool::new(false),
                    deadline: None,
                };
                let mut s = Searcher::new(&inc, &shared, k, b, &opts);
                for (i, &x) in prefix.iter().enumerate() {
                    s.apply(i, x as i64);
                }
                let (bound, _) = s.bound(prefix.len(), u32::MAX);
                assert!(bound >= opt, "b={b} prefix={prefix:?}: bound {bound} < {opt}");
            }
        }
    }

    #[test]
    fn rank_two_and_zero() {
        for b in 0..=12 {
            let r = solve_mk(2, b, &SolveOptions::oracle()).unwrap();
            assert_eq!((r.value, r.status), (3 * b, SolveStatus::Exact));
        }
        let r = solve_mk(5, 0, &SolveOptions::search_only()).unwrap();
        assert_eq!(r.value, 0);
        assert_eq!(r.certificate.sum(), 0);
    }

    #[test]
    fn search_matches_oracle_on_small_cases() {
        for k in 2..=3 {
            for b in 0..=5 {
                let fast = solve_mk(k, b, &SolveOptions::search_only()).unwrap();
                let slow = solve_mk(k, b, &SolveOptions::oracle()).unwrap();
                assert!(fast.is_exact() && slow.is_exact());
                assert_eq!(fast.value, slow.value, "k={k} b={b}");
            }
        }
    }

    #[test]
    fn known_small_values() {
        let opts = SolveOptions::search_only();
        assert_eq!(solve_mk(4, 6, &opts).unwrap().value, 12);
        assert_eq!(solve_mk(4, 5, &opts).unwrap().value, 9);
        assert_eq!(solve_mk(4, 4, &opts).unwrap().value, 8);
        assert_eq!(solve_mk(3, 2, &opts).unwrap().value, 4);
    }

    #[test]
    fn budget_exhaustion_degrades() {
        let opts = SolveOptions::oracle().with_budget(50);
        let r = solve_mk(4, 5, &opts).unwrap();
        assert_eq!(r.status, SolveStatus::LowerBoundOnly);
        assert!(r.value <= 9 && r.upper >= 9);
        assert!(feasible(&r.certificate, 5));
    }

    #[test]
    fn parallel_agrees() {
        let par = SolveOptions {
            deterministic: false,
            ..SolveOptions::search_only()
        };
        for b in 0..=8 {
            let a = solve_mk(4, b, &par).unwrap();
            let d = solve_mk(4, b, &SolveOptions::search_only()).unwrap();
            assert_eq!(a.value, d.value);
        }
    }

    #[test]
    fn srm_small() {
        let opts = SolveOptions::search_only();
        let r = solve_srm(6, 4, &opts).unwrap();
        assert_eq!(r.value, SrmValue::Exact(3));
        assert_eq!(solve_srm(9, 5, &opts).unwrap().value, SrmValue::Exact(2));
        assert_eq!(solve_srm(7, 1, &opts).unwrap().value, SrmValue::Exact(1));
        assert!(solve_srm(3, 4, &opts).is_err());
    }

    #[test]
    fn scan_rank_two() {
        let rep = conjecture_scan(2, 6, &SolveOptions::search_only()).unwrap();
        assert_eq!(rep.entries.len(), 7);
        assert_eq!(rep.violations().count(), 0);
        assert_eq!(rep.skipped(), 0);
    }
}
