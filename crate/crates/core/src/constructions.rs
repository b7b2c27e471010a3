//! Explicit feasible points and realizing matrices. Every constructor checks
//! its own output (feasibility and sum) before returning it.

use crate::error::{Error, Result};
use crate::gf2::{self, check_dim, dot_bits, Gf2Mat, Gf2Vec};
use crate::realizability::{
    feasible, hyperplane_size, matrix_to_multiplicities, realizes_fast, window_start,
    MultiplicityVector,
};

fn certify(mv: MultiplicityVector, b: u64, sum: u64, what: &str) -> Result<MultiplicityVector> {
    if mv.sum() != sum {
        return Err(Error::Certificate(format!(
            "{what}: sum {} differs from claimed {sum}",
            mv.sum()
        )));
    }
    if !feasible(&mv, b) {
        return Err(Error::Certificate(format!("{what}: infeasible at b={b}")));
    }
    Ok(mv)
}

fn to_u32(x: u64) -> Result<u32> {
    u32::try_from(x).map_err(|_| Error::OutOfRange(format!("multiplicity {x} too large")))
}

/// `a_v = Q` for every `v`: feasible at `b = (2^(k-1) - 1) Q` with no slack.
pub fn construct_uniform(k: u32, q: u64) -> Result<MultiplicityVector> {
    check_dim(k)?;
    let n = (1usize << k) - 1;
    let mv = MultiplicityVector::from_counts(k, vec![to_u32(q)?; n])?;
    certify(mv, hyperplane_size(k) * q, n as u64 * q, "uniform point")
}

/// `Q + R` at `e_1` and `Q` elsewhere, where `b = (2^(k-1) - 1) Q + R`.
pub fn construct_trivial(k: u32, b: u64) -> Result<MultiplicityVector> {
    check_dim(k)?;
    let h = hyperplane_size(k);
    let (q, r) = (b / h, b % h);
    let n = (1usize << k) - 1;
    let mut counts = vec![to_u32(q)?; n];
    counts[0] = to_u32(q + r)?;
    let mv = MultiplicityVector::from_counts(k, counts)?;
    certify(mv, b, n as u64 * q + r, "trivial point")
}

/// The window construction. With `ℓ = |U basis|` and
/// `2^(k-1) - 2^(k-1-ℓ) <= R < 2^(k-1) - 2^(k-2-ℓ)`, put
/// `r = R - 2^(k-1) + 2^(k-1-ℓ)` and
///
/// * `a_v = Q + r` for the `v` with `v^⊥ = V`,
/// * `a_v = Q` for the other `v` with `U ⊆ v^⊥`,
/// * `a_v = Q + 1` otherwise,
///
/// where `V = v_dual^⊥`. The sum is `(2^k - 1) Q + R + 2^(k-1) - 2^(k-1-ℓ)`.
pub fn construct_window(
    k: u32,
    q: u64,
    r_total: u64,
    v_dual: Gf2Vec,
    u_basis: &[Gf2Vec],
) -> Result<MultiplicityVector> {
    check_dim(k)?;
    let l = u_basis.len() as u32;
    if l > k - 2 {
        return Err(Error::Hypothesis(format!(
            "subspace dimension {l} exceeds k-2={}",
            k - 2
        )));
    }
    if v_dual.dim() != k || v_dual.is_zero() {
        return Err(Error::Hypothesis("V must be given by a nonzero dual vector".into()));
    }
    for u in u_basis {
        if u.dim() != k {
            return Err(Error::DimensionMismatch { left: k, right: u.dim() });
        }
        if dot_bits(u.bits(), v_dual.bits()) != 0 {
            return Err(Error::Hypothesis(format!("{u:?} is not inside V")));
        }
    }
    if gf2::rank(u_basis)? != u_basis.len() {
        return Err(Error::DependentBasis);
    }
    let lo = window_start(k, l);
    let hi = (1u64 << (k - 1)) - (1u64 << (k - 2 - l));
    if r_total < lo || r_total >= hi {
        return Err(Error::Hypothesis(format!(
            "R={r_total} outside window [{lo}, {hi}) for ℓ={l}"
        )));
    }
    let r = r_total - lo;
    let n = (1u32 << k) - 1;
    let mut counts = Vec::with_capacity(n as usize);
    for v in 1..=n {
        let c = if v == v_dual.bits() {
            q + r
        } else if u_basis.iter().all(|u| dot_bits(u.bits(), v) == 0) {
            q
        } else {
            q + 1
        };
        counts.push(to_u32(c)?);
    }
    let mv = MultiplicityVector::from_counts(k, counts)?;
    let b = hyperplane_size(k) * q + r_total;
    certify(mv, b, n as u64 * q + r_total + lo, "window construction")
}

/// [`construct_window`] for `b`, with `V = e_k^⊥` and `U = span{e_1..e_ℓ}`.
pub fn construct_window_default(k: u32, b: u64) -> Result<MultiplicityVector> {
    check_dim(k)?;
    let h = hyperplane_size(k);
    let (q, r) = (b / h, b % h);
    let l = crate::realizability::window_of(k, r);
    let u: Vec<Gf2Vec> = (1..=l).map(|i| Gf2Vec::from_raw(k, 1 << (i - 1))).collect();
    construct_window(k, q, r, Gf2Vec::from_raw(k, 1 << (k - 1)), &u)
}

/// Indicator of the odd-weight vectors outside an exceptional set `V_q`,
/// feasible at `b = 2^(k-2) - q`.
///
/// `V_1 = {e_i}`; `V_2` adds `u_0 = (1..1)` for odd `k`, or `u_0 + e_1`,
/// `u_0 + e_2` for even `k`; `V_4` (even `k` only) adds every `u_0 + e_i`.
pub fn construct_odd_weight(k: u32, q: u32) -> Result<MultiplicityVector> {
    check_dim(k)?;
    if k < 3 {
        return Err(Error::Hypothesis("odd-weight construction needs k >= 3".into()));
    }
    let all = (1u32 << k) - 1;
    let mut excluded: Vec<u32> = (0..k).map(|i| 1 << i).collect();
    let even = k % 2 == 0;
    match (q, even) {
        (1, _) => {}
        (2, false) => excluded.push(all),
        (2, true) => excluded.extend([all ^ 1, all ^ 2]),
        (4, true) => excluded.extend((0..k).map(|i| all ^ (1 << i))),
        _ => {
            return Err(Error::Hypothesis(format!(
                "no odd-weight construction for k={k}, q={q}"
            )))
        }
    }
    let counts: Vec<u32> = (1..=all)
        .map(|v| u32::from(v.count_ones() % 2 == 1 && !excluded.contains(&v)))
        .collect();
    let half = 1u64 << (k - 1);
    let sum = match (q, even) {
        (1, _) => half - k as u64,
        (2, false) => half - k as u64 - 1,
        (2, true) => half - k as u64 - 2,
        _ => half - 2 * k as u64,
    };
    let mv = MultiplicityVector::from_counts(k, counts)?;
    certify(mv, (1u64 << (k - 2)) - q as u64, sum, "odd-weight construction")
}

/// Lifts a point of `(Z/2)^k` feasible at `R` to `(Z/2)^(k+1)`: old vectors
/// get `Q + a_v`, vectors with last coordinate 1 get `Q + 1`. The result is
/// feasible at `(2^k - 1) Q + 2^(k-1) + R`.
pub fn lift_period(mv: &MultiplicityVector, r: u64, q: u64) -> Result<MultiplicityVector> {
    let k = mv.dim();
    check_dim(k + 1)?;
    if r > hyperplane_size(k) - 1 {
        return Err(Error::Hypothesis(format!(
            "R={r} exceeds 2^(k-1)-2={}",
            hyperplane_size(k) - 1
        )));
    }
    if !feasible(mv, r) {
        return Err(Error::Hypothesis(format!("input point infeasible at R={r}")));
    }
    let n_new = (1usize << (k + 1)) - 1;
    let mut counts = Vec::with_capacity(n_new);
    for v in 1..=n_new as u32 {
        let c = if v >> k == 0 {
            q + mv.get(v) as u64
        } else {
            q + 1
        };
        counts.push(to_u32(c)?);
    }
    let lifted = MultiplicityVector::from_counts(k + 1, counts)?;
    let b = ((1u64 << k) - 1) * q + (1u64 << (k - 1)) + r;
    let sum = n_new as u64 * q + (1u64 << k) + mv.sum();
    certify(lifted, b, sum, "period lift")
}

/// Pointwise sum; feasible at `b1 + b2` when the inputs are feasible at
/// `b1`, `b2`.
pub fn combine(a: &MultiplicityVector, b: &MultiplicityVector) -> Result<MultiplicityVector> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let counts = a
        .counts()
        .iter()
        .zip(b.counts())
        .map(|(&x, &y)| {
            x.checked_add(y)
                .ok_or_else(|| Error::OutOfRange("multiplicity overflow".into()))
        })
        .collect::<Result<Vec<u32>>>()?;
    MultiplicityVector::from_counts(a.dim(), counts)
}

/// Adds one column equal to the sum of all columns. If the point is
/// feasible at `b` and `sum ≡ b + 1 (mod 2)`, the result is feasible at `b`
/// with sum one larger. Returns `None` when the step does not apply.
pub fn extend_by_column_sum(mv: &MultiplicityVector, b: u64) -> Option<MultiplicityVector> {
    if (mv.sum() + b) % 2 == 0 || !feasible(mv, b) {
        return None;
    }
    let total = mv
        .counts()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c % 2 == 1)
        .fold(0u32, |acc, (i, _)| acc ^ (i as u32 + 1));
    // a zero column sum means every hyperplane has slack; any vector fits
    let v = if total == 0 { 1 } else { total };
    let out = mv.with(v, mv.get(v) + 1).ok()?;
    feasible(&out, b).then_some(out)
}

/// `(e_1, ..., e_(m-1), e_1 + ... + e_(m-1))`, in which every `m - 1`
/// columns span. Needs `3 <= m <= 17` so that the row count is supported.
pub fn matrix_corank_one(m: usize) -> Result<Gf2Mat> {
    if m < 3 {
        return Err(Error::UnsupportedDimension(m.saturating_sub(1) as u32));
    }
    let k = (m - 1) as u32;
    check_dim(k)?;
    let mut cols: Vec<u32> = (0..k).map(|i| 1 << i).collect();
    cols.push((1 << k) - 1);
    let a = Gf2Mat::from_bits(k, &cols)?;
    if !realizes_fast(&a, m - 1)? {
        return Err(Error::Certificate("corank-one matrix fails".into()));
    }
    Ok(a)
}

/// `p - 1` copies of `(e_1, e_2, e_1 + e_2)`. Every `p` columns span when
/// `p >= 2`; for `p = 1` the matrix is empty.
pub fn matrix_repeated_triangle(p: usize) -> Result<Gf2Mat> {
    if p == 0 {
        return Err(Error::OutOfRange("p must be positive".into()));
    }
    let cols: Vec<u32> = (0..p - 1).flat_map(|_| [1, 2, 3]).collect();
    let a = Gf2Mat::from_bits(2, &cols)?;
    if p >= 2 && !realizes_fast(&a, p)? {
        return Err(Error::Certificate("repeated triangle fails".into()));
    }
    Ok(a)
}

/// The 4×8 matrix whose every 5 columns span `(Z/2)^4`:
///
/// ```text
/// 1 0 0 0 0 1 1 1
/// 0 1 0 0 1 0 1 1
/// 0 0 1 0 1 1 0 1
/// 0 0 0 1 1 1 1 0
/// ```
pub fn matrix_four_by_eight() -> Gf2Mat {
    Gf2Mat::from_bits(4, &[0b0001, 0b0010, 0b0100, 0b1000, 0b1110, 0b1101, 0b1011, 0b0111])
        .expect("fixed matrix is well formed")
}

/// A `k × (k + n + 1)` matrix in which every `k + n - 2` columns span: the
/// identity, then `n` columns whose row supports `A(i) ⊆ {1..n}` are
/// pairwise distinct with `|A(i)| >= 2`, then the sum of all columns.
///
/// Such supports exist iff `k <= 2^n - 1 - n`. Pairs covering `{1..n}` are
/// used first so that no extra column is zero when `k >= ceil(n / 2)`.
pub fn matrix_distinct_supports(k: u32, n: u32) -> Result<Gf2Mat> {
    check_dim(k)?;
    if n < 2 || n > 20 || (k as u64) > (1u64 << n) - 1 - n as u64 {
        return Err(Error::Hypothesis(format!(
            "no {k} distinct supports of size >= 2 in a set of {n}"
        )));
    }
    let mut supports: Vec<u32> = Vec::with_capacity(k as usize);
    for j in (0..n).step_by(2) {
        let pair = if j + 1 < n {
            (1 << j) | (1 << (j + 1))
        } else {
            (1 << (j - 1)) | (1 << j)
        };
        if !supports.contains(&pair) {
            supports.push(pair);
        }
    }
    let mut rest: Vec<u32> = (1u32..1 << n)
        .filter(|s| s.count_ones() >= 2 && !supports.contains(s))
        .collect();
    rest.sort_by_key(|s| (s.count_ones(), *s));
    supports.extend(rest);
    supports.truncate(k as usize);

    let mut cols: Vec<u32> = (0..k).map(|i| 1 << i).collect();
    for j in 0..n {
        let col = supports
            .iter()
            .enumerate()
            .filter(|(_, s)| (*s >> j) & 1 == 1)
            .fold(0, |acc, (i, _)| acc | (1 << i));
        cols.push(col);
    }
    cols.push(cols.iter().fold(0, |acc, c| acc ^ c));
    let a = Gf2Mat::from_bits(k, &cols)?;
    let p = (k + n - 2) as usize;
    if p == 0 || !realizes_fast(&a, p)? {
        return Err(Error::Certificate("distinct-support matrix fails".into()));
    }
    Ok(a)
}

/// Multiplicity form of [`matrix_distinct_supports`] for `b = k + n - 3`,
/// i.e. a feasible point at `b` with sum `b + 4` (zero columns dropped).
pub fn construct_distinct_supports(k: u32, b: u64) -> Result<MultiplicityVector> {
    if b + 3 < k as u64 + 2 {
        return Err(Error::Hypothesis(format!("b={b} too small for k={k}")));
    }
    let n = (b + 3 - k as u64) as u32;
    let a = matrix_distinct_supports(k, n)?;
    let (mv, _zeros) = matrix_to_multiplicities(&a);
    if !feasible(&mv, b) {
        return Err(Error::Certificate("distinct-support point infeasible".into()));
    }
    Ok(mv)
}
