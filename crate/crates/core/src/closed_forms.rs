//! Proven values and bounds of `m_k(b)` and `s_R(m, p)`, assembled into
//! certified intervals.
//!
//! Lower bounds always come with a feasible point whose sum is the bound.
//! Upper bounds are derived symbolically and tagged with the rule that
//! produced them.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::constructions::{
    combine, construct_distinct_supports, construct_odd_weight, construct_trivial,
    construct_uniform, construct_window_default, extend_by_column_sum, lift_period,
    matrix_corank_one,
};
use crate::error::{Error, Result};
use crate::gf2::{check_dim, Gf2Mat};
use crate::realizability::{
    feasible, hyperplane_size, matrix_to_multiplicities, multiplicities_to_matrix, realizes_fast,
    window_of, window_start, MultiplicityVector,
};

/// Largest `b` accepted by the bound engine.
pub const MAX_B: u64 = 1 << 32;

/// Largest `k` for which closed forms and symbolic upper bounds are
/// evaluated (certificates need `k <= 16`).
pub const MAX_FORMULA_DIM: u32 = 40;

/// Lower-bound tables are built by dynamic programming up to this `b`; larger
/// `b` is first reduced by uniform shifts.
pub const DP_CAP: u64 = 512;

fn check_formula_args(k: u32, b: u64) -> Result<()> {
    if !(2..=MAX_FORMULA_DIM).contains(&k) {
        return Err(Error::UnsupportedDimension(k));
    }
    if b > MAX_B {
        return Err(Error::OutOfRange(format!("b={b} exceeds {MAX_B}")));
    }
    Ok(())
}

fn pow2(e: u32) -> u64 {
    1u64 << e
}

/// `ceil(log2(x))` for `x >= 1`.
fn ceil_log2(x: u64) -> u64 {
    debug_assert!(x >= 1);
    (64 - (x - 1).leading_zeros()) as u64
}

/// `[m - log2(m + 1)]`: the largest `k` with `m + 1 <= 2^(m-k)`. This is the
/// number of rows available when every `m - 2` of `m` columns must span.
pub fn floor_m_minus_log2(m: u64) -> u64 {
    m.saturating_sub(ceil_log2(m + 1))
}

fn parity_floor(x: u64, b: u64) -> u64 {
    if (x + b) % 2 == 1 {
        x - 1
    } else {
        x
    }
}

fn agree(cands: &[(u64, &str)], what: &str) -> Option<u64> {
    let (first, _) = *cands.first()?;
    for (v, tag) in cands {
        assert_eq!(*v, first, "{what}: `{tag}` gives {v}, `{}` gives {first}", cands[0].1);
    }
    Some(first)
}

/// Exact `s_R(m, p)` in the special positions where it is known outright:
/// `p` in `{0, 1, m - 3, m - 2, m - 1, m}` and `m >= 3p - 2`.
pub fn srm_boundary(m: u64, p: u64) -> Result<Option<u64>> {
    if m == 0 {
        return Err(Error::OutOfRange("m must be positive".into()));
    }
    if p > m {
        return Err(Error::OutOfRange(format!("p={p} exceeds m={m}")));
    }
    let mut c: Vec<(u64, &str)> = Vec::new();
    if p == 0 {
        c.push((0, "p=0"));
    }
    if p == m {
        c.push((m, "p=m"));
    }
    if p == 1 {
        c.push((1, "p=1"));
    }
    if m >= 2 && p == m - 1 {
        c.push((m - 1, "p=m-1"));
    }
    if m >= 3 && p == m - 2 {
        c.push((floor_m_minus_log2(m), "p=m-2"));
    }
    if m >= 4 && p == m - 3 {
        c.push((floor_m_minus_log2(m - 1), "p=m-3"));
    }
    if p >= 1 && m + 2 >= 3 * p {
        c.push((1, "m>=3p-2"));
    }
    Ok(agree(&c, "srm_boundary"))
}

fn closed_candidates(k: u32, b: u64) -> Vec<(u64, &'static str)> {
    let h = hyperplane_size(k);
    let (q, r) = (b / h, b % h);
    let full = pow2(k) - 1;
    let kk = k as u64;
    let mut c: Vec<(u64, &'static str)> = Vec::new();
    if k == 2 {
        c.push((3 * b, "rank-two"));
    }
    if r == 0 {
        c.push((full * q, "divisible"));
    }
    // window family: b = hQ' + 2^(k-1) - 2^(k-1-l) + r', 0 <= r' <= k-l-1
    for l in 0..=k - 2 {
        let start = window_start(k, l);
        for rr in 0..=(kk - l as u64 - 1) {
            let t = start + rr;
            if b >= t && (b - t) % h == 0 {
                let qq = (b - t) / h;
                let tail = if rr + 2 <= kk - l as u64 { rr } else { rr + 2 };
                c.push((full * qq + pow2(k) - pow2(k - l) + tail, "window-family"));
            }
        }
    }
    // second family, 4 <= k-l <= 11
    for l in 0..=k - 2 {
        let d = (k - l) as u64;
        if !(4..=11).contains(&d) {
            continue;
        }
        let t = pow2(k - 1) - pow2(k - l - 1) + d + 1;
        if b >= t && (b - t) % h == 0 {
            let qq = (b - t) / h;
            c.push((full * qq + pow2(k) - pow2(k - l) + d + 5, "shifted-window-family"));
        }
    }
    if b == kk {
        c.push((if k <= 4 { kk + 4 } else { kk + 2 }, "b=k"));
    }
    if b == kk + 1 {
        let v = match k {
            2 => 9,
            3..=11 => kk + 5,
            _ => kk + 3,
        };
        c.push((v, "b=k+1"));
    }
    if b + 2 <= kk {
        c.push((b, "b<=k-2"));
    }
    if b + 1 == kk {
        c.push((kk + 1, "b=k-1"));
    }
    if r + 1 <= kk {
        let tail = if r + 2 <= kk { r } else { r + 2 };
        c.push((full * q + tail, "small-remainder"));
    }
    if k == 3 {
        c.push((7 * q + [0, 1, 4][r as usize], "rank-three"));
    }
    if (4..=11).contains(&k) && r == kk + 1 {
        c.push((full * q + kk + 5, "remainder-k+1"));
    }
    // attainment of the window bracket
    let l = window_of(k, r);
    let start = window_start(k, l);
    if r == start {
        c.push((full * q + 2 * r, "upper-bracket-attained"));
    }
    if r - start + l as u64 + 2 <= kk {
        c.push((full * q + r + start, "lower-bracket-attained"));
    }
    c
}

/// `m_k(b)` when a proven closed form applies. When several apply they are
/// checked to agree.
pub fn mk_closed(k: u32, b: u64) -> Result<Option<u64>> {
    check_formula_args(k, b)?;
    Ok(agree(&closed_candidates(k, b), "mk_closed"))
}

/// Provenance tag of the first closed form that applies.
pub fn mk_closed_tag(k: u32, b: u64) -> Result<Option<&'static str>> {
    check_formula_args(k, b)?;
    Ok(closed_candidates(k, b).first().map(|c| c.1))
}

// ---------------------------------------------------------------------------
// lower bounds

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Source {
    Trivial,
    Window,
    OddWeight(u32),
    Lift,
    CorankOne,
    DistinctSupports,
    Split(u64),
    Shift(u64),
}

impl Source {
    fn tag(self) -> &'static str {
        match self {
            Source::Trivial => "trivial-point",
            Source::Window => "window-construction",
            Source::OddWeight(_) => "odd-weight",
            Source::Lift => "period-lift",
            Source::CorankOne => "corank-one",
            Source::DistinctSupports => "distinct-supports",
            Source::Split(_) => "superadditive",
            Source::Shift(_) => "uniform-shift",
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Plan {
    value: u64,
    source: Source,
    // one column-sum extension on top of `source`
    extended: bool,
}

#[derive(Default)]
struct LowerTables {
    // per k, plans for b = 0..len
    dp: HashMap<u32, Vec<Plan>>,
}

impl LowerTables {
    fn base_plans(&mut self, k: u32, b: u64) -> Vec<(u64, Source)> {
        let h = hyperplane_size(k);
        let (q, r) = (b / h, b % h);
        let full = pow2(k) - 1;
        let kk = k as u64;
        let mut out = vec![(full * q + r, Source::Trivial)];
        out.push((full * q + r + window_start(k, window_of(k, r)), Source::Window));
        if k >= 3 {
            let quarter = pow2(k - 2);
            let half = pow2(k - 1);
            let even = k % 2 == 0;
            let mut odd = vec![(1u32, half - kk)];
            odd.push((2, if even { half - kk - 2 } else { half - kk - 1 }));
            if even && half >= 2 * kk {
                odd.push((4, half - 2 * kk));
            }
            for (qq, sum) in odd {
                if quarter >= qq as u64 && r == quarter - qq as u64 {
                    out.push((full * q + sum, Source::OddWeight(qq)));
                }
            }
            if r >= quarter {
                let inner = self.plan(k - 1, r - quarter).value;
                out.push((full * q + half + inner, Source::Lift));
            }
        }
        if b + 1 == kk {
            out.push((kk + 1, Source::CorankOne));
        }
        if b + 3 >= kk + 2 {
            let n = b + 3 - kk;
            if n <= 20 && kk <= pow2(n as u32) - 1 - n && 2 * kk >= n {
                out.push((b + 4, Source::DistinctSupports));
            }
        }
        out
    }

    fn plan(&mut self, k: u32, b: u64) -> Plan {
        if b > DP_CAP {
            let h = hyperplane_size(k);
            // whole periods only; below one period (large k) split off DP_CAP
            let t = (b - DP_CAP).div_ceil(h).min(b / h);
            let mut best = if t > 0 {
                let inner = self.plan(k, b - t * h);
                Plan {
                    value: inner.value + t * (pow2(k) - 1),
                    source: Source::Shift(t),
                    extended: false,
                }
            } else {
                Plan {
                    value: self.plan(k, DP_CAP).value + self.plan(k, b - DP_CAP).value,
                    source: Source::Split(DP_CAP),
                    extended: false,
                }
            };
            for (v, s) in self.base_plans(k, b) {
                if v > best.value {
                    best = Plan { value: v, source: s, extended: false };
                }
            }
            return finish_parity(best, b);
        }
        let have = self.dp.get(&k).map_or(0, |t| t.len() as u64);
        for bb in have..=b {
            let mut best = Plan {
                value: 0,
                source: Source::Trivial,
                extended: false,
            };
            for (v, s) in self.base_plans(k, bb) {
                if v > best.value {
                    best = Plan { value: v, source: s, extended: false };
                }
            }
            let table = self.dp.entry(k).or_default();
            for b1 in 1..=bb / 2 {
                let v = table[b1 as usize].value + table[(bb - b1) as usize].value;
                if v > best.value {
                    best = Plan {
                        value: v,
                        source: Source::Split(b1),
                        extended: false,
                    };
                }
            }
            let best = finish_parity(best, bb);
            self.dp.get_mut(&k).expect("table exists").push(best);
        }
        self.dp[&k][b as usize]
    }

    fn build(&mut self, k: u32, b: u64) -> Result<(MultiplicityVector, Vec<&'static str>)> {
        let plan = self.plan(k, b);
        let h = hyperplane_size(k);
        let (q, r) = (b / h, b % h);
        let mut tags = vec![plan.source.tag()];
        let mv = match plan.source {
            Source::Trivial => construct_trivial(k, b)?,
            Source::Window => construct_window_default(k, b)?,
            Source::OddWeight(qq) => combine(&construct_odd_weight(k, qq)?, &construct_uniform(k, q)?)?,
            Source::Lift => {
                let rr = r - pow2(k - 2);
                let (inner, t) = self.build(k - 1, rr)?;
                tags.extend(t);
                lift_period(&inner, rr, q)?
            }
            Source::CorankOne => matrix_to_multiplicities(&matrix_corank_one(k as usize + 1)?).0,
            Source::DistinctSupports => construct_distinct_supports(k, b)?,
            Source::Split(b1) => {
                let (x, t1) = self.build(k, b1)?;
                let (y, t2) = self.build(k, b - b1)?;
                tags.extend(t1);
                tags.extend(t2);
                combine(&x, &y)?
            }
            Source::Shift(t) => {
                let (x, t1) = self.build(k, b - t * h)?;
                tags.extend(t1);
                combine(&x, &construct_uniform(k, t)?)?
            }
        };
        let mv = if plan.extended {
            tags.push("column-sum-extension");
            extend_by_column_sum(&mv, b).ok_or_else(|| {
                Error::Certificate(format!("column-sum extension failed for k={k}, b={b}"))
            })?
        } else {
            mv
        };
        if mv.sum() != plan.value || !feasible(&mv, b) {
            return Err(Error::Certificate(format!(
                "lower-bound point for k={k}, b={b} has sum {} (planned {}) or is infeasible",
                mv.sum(),
                plan.value
            )));
        }
        tags.sort_unstable();
        tags.dedup();
        Ok((mv, tags))
    }
}

fn finish_parity(mut p: Plan, b: u64) -> Plan {
    if (p.value + b) % 2 == 1 {
        p.value += 1;
        p.extended = true;
    }
    p
}

fn lower_tables() -> &'static Mutex<LowerTables> {
    static T: OnceLock<Mutex<LowerTables>> = OnceLock::new();
    T.get_or_init(|| Mutex::new(LowerTables::default()))
}

/// A witnessed lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBound {
    pub value: u64,
    pub provenance: Vec<String>,
    pub certificate: MultiplicityVector,
}

fn lower_value(k: u32, b: u64) -> u64 {
    lower_tables().lock().unwrap_or_else(|e| e.into_inner()).plan(k, b).value
}

/// The best lower bound reachable from the known constructions, closed under
/// pointwise sums and the column-sum extension. The certificate is checked
/// before it is returned.
pub fn mk_lower(k: u32, b: u64) -> Result<LowerBound> {
    check_dim(k)?;
    check_formula_args(k, b)?;
    let (certificate, tags) = lower_tables().lock().unwrap_or_else(|e| e.into_inner()).build(k, b)?;
    Ok(LowerBound {
        value: certificate.sum(),
        provenance: tags.into_iter().map(String::from).collect(),
        certificate,
    })
}

// ---------------------------------------------------------------------------
// upper bounds

/// A symbolic upper bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperBound {
    pub value: u64,
    pub provenance: Vec<String>,
}

#[derive(Default)]
struct UpperTables {
    base: HashMap<(u32, u64), (u64, &'static str)>,
    full: HashMap<(u32, u64), (u64, &'static str)>,
}

// Distance of the neighbour used when tightening `m(b) <= m(b+d) - m(d)`.
const GAP_WINDOW: u64 = 32;

pub(crate) fn periodic_hypothesis(k: u32, b: u64) -> bool {
    let h = hyperplane_size(k);
    let (q, r) = (b / h, b % h);
    let quarter = pow2(k - 2);
    if r < quarter {
        q >= r
    } else {
        q >= r - quarter
    }
}

impl UpperTables {
    fn best(cands: &[(u64, &'static str)], b: u64) -> (u64, &'static str) {
        let (v, t) = *cands.iter().min_by_key(|c| c.0).expect("non-empty");
        let pv = parity_floor(v, b);
        if pv < v {
            (pv, if t == "lp-floor" { "parity" } else { t })
        } else {
            (v, t)
        }
    }

    // rules that look only at smaller k or smaller b
    fn base(&mut self, k: u32, b: u64) -> (u64, &'static str) {
        if let Some(&x) = self.base.get(&(k, b)) {
            return x;
        }
        let out = if let Some(v) = agree(&closed_candidates(k, b), "mk_closed") {
            (v, "closed-form")
        } else {
            let h = hyperplane_size(k);
            let (q, r) = (b / h, b % h);
            let full = pow2(k) - 1;
            let mut c: Vec<(u64, &'static str)> = vec![(2 * b + q, "lp-floor")];
            let l = window_of(k, r);
            if r != window_start(k, l) {
                c.push((full * q + 2 * r - 1, "s2r-exclusion"));
            }
            if k as u64 > floor_m_minus_log2(b + 3) {
                c.push((b + 2, "near-full-skeleton"));
            }
            if k >= 3 {
                c.push((self.full(k - 1, b).0, "k-monotone"));
                if r != 0 {
                    c.push((self.full(k - 1, b - q - 1).0 + q + 1, "k-recursion"));
                }
            }
            if b >= h && periodic_hypothesis(k, b - h) {
                c.push((self.full(k, b - h).0 + full, "periodic-shift"));
            }
            Self::best(&c, b)
        };
        self.base.insert((k, b), out);
        out
    }

    fn full(&mut self, k: u32, b: u64) -> (u64, &'static str) {
        if let Some(&x) = self.full.get(&(k, b)) {
            return x;
        }
        let mut c = vec![self.base(k, b)];
        if c[0].1 != "closed-form" && k <= 16 {
            let d_max = GAP_WINDOW.min(hyperplane_size(k) - 1);
            for d in 1..=d_max {
                let above = self.base(k, b + d).0;
                let below = lower_value(k, d);
                c.push((above.saturating_sub(below), "superadditive-gap"));
            }
        }
        let out = Self::best(&c, b);
        self.full.insert((k, b), out);
        out
    }
}

fn upper_tables() -> &'static Mutex<UpperTables> {
    static T: OnceLock<Mutex<UpperTables>> = OnceLock::new();
    T.get_or_init(|| Mutex::new(UpperTables::default()))
}

/// The smallest upper bound from: the LP floor, parity, the `k - 1`
/// recursion, monotonicity in `k`, the exclusion of `S = 2R` off window
/// starts, the cap `b + 2` once `k` exceeds `[b + 3 - log2(b + 4)]`,
/// periodicity where it is proven, and `m(b + d) - m(d)`.
pub fn mk_upper(k: u32, b: u64) -> Result<UpperBound> {
    check_formula_args(k, b)?;
    let (value, tag) = upper_tables().lock().unwrap_or_else(|e| e.into_inner()).full(k, b);
    Ok(UpperBound {
        value,
        provenance: vec![tag.to_string()],
    })
}

// ---------------------------------------------------------------------------
// intervals

/// Certified `[lo, hi]` for `m_k(b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundInterval {
    pub k: u32,
    pub b: u64,
    pub lo: u64,
    pub hi: u64,
    pub lo_provenance: Vec<String>,
    pub hi_provenance: Vec<String>,
    #[serde(skip)]
    pub certificate: Option<MultiplicityVector>,
}

impl BoundInterval {
    pub fn exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn value(&self) -> Option<u64> {
        self.exact().then_some(self.lo)
    }
}

/// Lower and upper bounds for `m_k(b)`. Where periodicity is proven, the
/// interval of `b - (2^(k-1) - 1)` shifted by `2^k - 1` is intersected in.
pub fn bounds(k: u32, b: u64) -> Result<BoundInterval> {
    check_dim(k)?;
    check_formula_args(k, b)?;
    let lower = mk_lower(k, b)?;
    let mut lo = lower.value;
    let mut lo_prov = lower.provenance;
    let mut cert = lower.certificate;
    let (mut hi, mut hi_prov) = match mk_closed(k, b)? {
        Some(v) => (v, vec![mk_closed_tag(k, b)?.unwrap_or("closed-form").to_string()]),
        None => {
            let u = mk_upper(k, b)?;
            (u.value, u.provenance)
        }
    };

    let h = hyperplane_size(k);
    if b >= h && periodic_hypothesis(k, b - h) {
        let prev = bounds(k, b - h)?;
        let shift = pow2(k) - 1;
        if prev.lo + shift > lo {
            lo = prev.lo + shift;
            lo_prov = prev.lo_provenance.clone();
            lo_prov.push("periodic-shift".into());
            if let Some(c) = &prev.certificate {
                cert = combine(c, &construct_uniform(k, 1)?)?;
            }
        }
        if prev.hi + shift < hi {
            hi = prev.hi + shift;
            hi_prov = vec!["periodic-shift".into()];
        }
    }
    if lo > hi {
        return Err(Error::Certificate(format!(
            "k={k}, b={b}: lower bound {lo} exceeds upper bound {hi}"
        )));
    }
    if cert.sum() != lo || !feasible(&cert, b) {
        return Err(Error::Certificate(format!("k={k}, b={b}: bad lower certificate")));
    }
    Ok(BoundInterval {
        k,
        b,
        lo,
        hi,
        lo_provenance: lo_prov,
        hi_provenance: hi_prov,
        certificate: Some(cert),
    })
}

// ---------------------------------------------------------------------------
// the invariant

/// `s_R(m, p)` or an interval containing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SrmValue {
    Exact(u64),
    Range { lo: u64, hi: u64 },
}

impl SrmValue {
    pub fn exact(&self) -> Option<u64> {
        match *self {
            SrmValue::Exact(v) => Some(v),
            SrmValue::Range { .. } => None,
        }
    }

    pub fn lo(&self) -> u64 {
        match *self {
            SrmValue::Exact(v) => v,
            SrmValue::Range { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> u64 {
        match *self {
            SrmValue::Exact(v) => v,
            SrmValue::Range { hi, .. } => hi,
        }
    }

    pub(crate) fn from_range(lo: u64, hi: u64) -> Self {
        if lo == hi {
            SrmValue::Exact(lo)
        } else {
            SrmValue::Range { lo, hi }
        }
    }
}

impl std::fmt::Display for SrmValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SrmValue::Exact(v) => write!(f, "{v}"),
            SrmValue::Range { lo, hi } => write!(f, "[{lo},{hi}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantResult {
    pub m: u64,
    pub p: u64,
    pub value: SrmValue,
    /// A `value × m` matrix (or `lo × m` for intervals) in which every `p`
    /// columns span; absent when the row count is outside `2..=16`.
    pub certificate: Option<Gf2Mat>,
    pub provenance: String,
}

/// Drops columns from a point feasible at `p - 1` until exactly `m` remain
/// and returns the realizing matrix.
pub fn realizing_matrix(cert: &MultiplicityVector, m: u64, p: u64) -> Result<Gf2Mat> {
    if cert.sum() < m {
        return Err(Error::Certificate(format!(
            "point has {} columns, {m} needed",
            cert.sum()
        )));
    }
    let mut mv = cert.clone();
    let mut excess = cert.sum() - m;
    while excess > 0 {
        let counts = mv.counts_mut();
        let i = (0..counts.len())
            .max_by_key(|&i| (counts[i], std::cmp::Reverse(i)))
            .expect("non-empty");
        counts[i] -= 1;
        excess -= 1;
    }
    let a = multiplicities_to_matrix(&mv);
    if a.len() as u64 != m || p == 0 || !realizes_fast(&a, p as usize)? {
        return Err(Error::Certificate("sub-multiset does not realize".into()));
    }
    Ok(a)
}

/// Certifies `s_R(m, p) >= k` when `m_k(p - 1)` is at least `m` by a known
/// point; `None` otherwise.
pub(crate) fn certificate_for(k: u64, m: u64, p: u64) -> Option<Gf2Mat> {
    if !(2..=16).contains(&k) || p == 0 {
        return None;
    }
    let lower = mk_lower(k as u32, p - 1).ok()?;
    realizing_matrix(&lower.certificate, m, p).ok()
}

/// The cap `s_R(m, p) <= min(p, [p + 2 - log2(p + 3)])` for `m >= p + 2`.
pub(crate) fn srm_cap(m: u64, p: u64) -> u64 {
    if m >= p + 2 {
        p.min(floor_m_minus_log2(p + 2))
    } else {
        p
    }
}

/// `s_R(m, p)` from the boundary cases, or else from the bound intervals of
/// `m_k(p - 1)` for `k = 2, 3, ...` using `s_R(m, p) >= k ⟺ m <= m_k(p-1)`.
pub fn srm_bounds(m: u64, p: u64) -> Result<InvariantResult> {
    if p == 0 || p > m {
        return Err(Error::OutOfRange(format!("need 1 <= p <= m, got m={m}, p={p}")));
    }
    if let Some(v) = srm_boundary(m, p)? {
        return Ok(InvariantResult {
            m,
            p,
            value: SrmValue::Exact(v),
            certificate: certificate_for(v, m, p),
            provenance: "boundary".into(),
        });
    }
    let cap = srm_cap(m, p);
    let k_top = cap.min(16);
    // intervals for k = 2..=k_top, then monotone envelopes
    let mut ivs = Vec::new();
    for k in 2..=k_top {
        ivs.push(bounds(k as u32, p - 1)?);
    }
    let (lo, hi) = decide_from_intervals(m, &ivs, cap);
    let value = SrmValue::from_range(lo, hi);
    Ok(InvariantResult {
        m,
        p,
        value,
        certificate: certificate_for(lo, m, p),
        provenance: if value.exact().is_some() {
            "mk-bounds".into()
        } else {
            "mk-bounds-interval".into()
        },
    })
}

/// Given `[lo_k, hi_k]` for `k = 2, 3, ...` (in order) and a cap on the
/// invariant, returns the range of `s_R(m, p)` they allow.
pub(crate) fn decide_from_intervals(m: u64, ivs: &[BoundInterval], cap: u64) -> (u64, u64) {
    let n = ivs.len();
    // hi envelope: min over j <= k; lo envelope: max over j >= k
    let mut hi_env = Vec::with_capacity(n);
    let mut run = u64::MAX;
    for iv in ivs {
        run = run.min(iv.hi);
        hi_env.push(run);
    }
    let mut lo_env = vec![0; n];
    let mut run = 0;
    for i in (0..n).rev() {
        run = run.max(ivs[i].lo);
        lo_env[i] = run;
    }
    let mut s_lo = 1;
    let mut s_hi = 1;
    for i in 0..n {
        let k = i as u64 + 2;
        if m <= lo_env[i] {
            s_lo = k;
        }
        if m <= hi_env[i] {
            s_hi = k;
        }
    }
    // beyond the computed range nothing is known except the cap
    if n > 0 && m <= hi_env[n - 1] && (n as u64 + 1) < cap {
        s_hi = cap;
    }
    (s_lo.min(cap), s_hi.min(cap).max(s_lo.min(cap)))
}
