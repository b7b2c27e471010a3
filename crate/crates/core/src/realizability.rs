//! The matrix criterion ("every `p` columns span") and the equivalent
//! hyperplane-load criterion on column multiplicities.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gf2::{self, check_dim, dot_bits, rank_bits, Gf2Mat, Gf2Vec};

const MAX_TOTAL: u64 = i32::MAX as u64;

/// Column multiplicities `a_v`, one per nonzero `v` in canonical order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiplicityVector {
    dim: u32,
    counts: Vec<u32>,
}

impl MultiplicityVector {
    pub fn zeros(dim: u32) -> Result<Self> {
        check_dim(dim)?;
        Ok(MultiplicityVector {
            dim,
            counts: vec![0; (1usize << dim) - 1],
        })
    }

    pub fn from_counts(dim: u32, counts: Vec<u32>) -> Result<Self> {
        check_dim(dim)?;
        let n = (1usize << dim) - 1;
        if counts.len() != n {
            return Err(Error::OutOfRange(format!(
                "expected {n} multiplicities for k={dim}, got {}",
                counts.len()
            )));
        }
        let total: u64 = counts.iter().map(|&c| c as u64).sum();
        if total > MAX_TOTAL {
            return Err(Error::OutOfRange(format!("total multiplicity {total}")));
        }
        Ok(MultiplicityVector { dim, counts })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Multiplicity of the nonzero vector with encoding `bits`.
    pub fn get(&self, bits: u32) -> u32 {
        if bits == 0 {
            0
        } else {
            self.counts[bits as usize - 1]
        }
    }

    pub fn sum(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    pub fn support_len(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    /// Copy with `a_v` replaced.
    pub fn with(&self, bits: u32, value: u32) -> Result<Self> {
        if bits == 0 || bits >> self.dim != 0 {
            return Err(Error::OutOfRange(format!("no variable for encoding {bits}")));
        }
        let mut counts = self.counts.clone();
        counts[bits as usize - 1] = value;
        Self::from_counts(self.dim, counts)
    }

    /// `∑_{(u,v)=0} a_v` for every nonzero `u`, in canonical order of `u`.
    pub fn hyperplane_loads(&self) -> Vec<u64> {
        let n = self.counts.len();
        if self.support_len() * n <= 1 << 16 {
            let mut loads = vec![0u64; n];
            for (vi, &c) in self.counts.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let v = vi as u32 + 1;
                for (ui, load) in loads.iter_mut().enumerate() {
                    if dot_bits(ui as u32 + 1, v) == 0 {
                        *load += c as u64;
                    }
                }
            }
            return loads;
        }
        // Walsh-Hadamard: F(u) = ∑ a_v (-1)^(u,v), and load(u) = (S + F(u)) / 2
        let mut f: Vec<i64> = std::iter::once(0)
            .chain(self.counts.iter().map(|&c| c as i64))
            .collect();
        let mut len = 1;
        while len < f.len() {
            for block in f.chunks_mut(2 * len) {
                let (lo, hi) = block.split_at_mut(len);
                for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (a, b) = (*x, *y);
                    *x = a + b;
                    *y = a - b;
                }
            }
            len *= 2;
        }
        let total = self.sum() as i64;
        f[1..].iter().map(|&w| ((total + w) / 2) as u64).collect()
    }

    pub(crate) fn counts_mut(&mut self) -> &mut [u32] {
        &mut self.counts
    }
}

impl std::fmt::Debug for MultiplicityVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MultiplicityVector(k={}, {:?})", self.dim, self.counts)
    }
}

/// `b = (2^(k-1) - 1) Q + R` with `0 <= R <= 2^(k-1) - 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConstraintProblem {
    pub k: u32,
    pub b: u64,
    pub q: u64,
    pub r: u64,
}

impl ConstraintProblem {
    pub fn new(k: u32, b: u64) -> Result<Self> {
        check_dim(k)?;
        let h = hyperplane_size(k);
        Ok(ConstraintProblem {
            k,
            b,
            q: b / h,
            r: b % h,
        })
    }

    /// `2^(k-1) - 1`, the number of nonzero vectors in a hyperplane.
    pub fn hyperplane_size(&self) -> u64 {
        hyperplane_size(self.k)
    }

    /// `2^k - 1`.
    pub fn variable_count(&self) -> u64 {
        (1u64 << self.k) - 1
    }

    /// The `ℓ` with `2^(k-1) - 2^(k-1-ℓ) <= R < 2^(k-1) - 2^(k-2-ℓ)`.
    pub fn window(&self) -> u32 {
        window_of(self.k, self.r)
    }
}

pub(crate) fn hyperplane_size(k: u32) -> u64 {
    (1u64 << (k - 1)) - 1
}

/// Left end `2^(k-1) - 2^(k-1-ℓ)` of window `ℓ`.
pub(crate) fn window_start(k: u32, l: u32) -> u64 {
    (1u64 << (k - 1)) - (1u64 << (k - 1 - l))
}

pub(crate) fn window_of(k: u32, r: u64) -> u32 {
    let mut l = 0;
    while l + 1 <= k - 2 && window_start(k, l + 1) <= r {
        l += 1;
    }
    l
}

fn check_p(a: &Gf2Mat, p: usize) -> Result<()> {
    if p == 0 || p > a.len() {
        return Err(Error::OutOfRange(format!(
            "p={p} must satisfy 1 <= p <= m={}",
            a.len()
        )));
    }
    Ok(())
}

/// Whether every `p` columns of `a` span `(Z/2)^k`, by checking all
/// `C(m, p)` column subsets directly.
pub fn realizes_naive(a: &Gf2Mat, p: usize) -> Result<bool> {
    check_p(a, p)?;
    let k = a.dim() as usize;
    let cols: Vec<u32> = a.column_bits().collect();
    if p < k {
        return Ok(false);
    }
    let m = cols.len();
    let mut idx: Vec<usize> = (0..p).collect();
    loop {
        if rank_bits(idx.iter().map(|&i| cols[i])) < k {
            return Ok(false);
        }
        // next p-subset in lexicographic order
        let mut i = p;
        while i > 0 && idx[i - 1] == m - p + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return Ok(true);
        }
        idx[i - 1] += 1;
        for j in i..p {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// A hyperplane `u^⊥` holding too many columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub u: Gf2Vec,
    pub columns_inside: usize,
}

/// First hyperplane (canonical order of `u`) containing at least `p`
/// columns, zero columns included.
pub fn find_violation(a: &Gf2Mat, p: usize) -> Result<Option<Violation>> {
    check_p(a, p)?;
    let k = a.dim();
    for u in 1..(1u32 << k) {
        let inside = a.column_bits().filter(|&c| dot_bits(u, c) == 0).count();
        if inside >= p {
            return Ok(Some(Violation {
                u: Gf2Vec::from_raw(k, u),
                columns_inside: inside,
            }));
        }
    }
    Ok(None)
}

/// Whether every `p` columns span, via hyperplane loads: no `u^⊥` may hold
/// `p` or more columns.
pub fn realizes_fast(a: &Gf2Mat, p: usize) -> Result<bool> {
    Ok(find_violation(a, p)?.is_none())
}

pub fn matrix_to_multiplicities(a: &Gf2Mat) -> (MultiplicityVector, usize) {
    let mut counts = vec![0u32; (1usize << a.dim()) - 1];
    let mut zeros = 0;
    for c in a.column_bits() {
        if c == 0 {
            zeros += 1;
        } else {
            counts[c as usize - 1] += 1;
        }
    }
    (
        MultiplicityVector {
            dim: a.dim(),
            counts,
        },
        zeros,
    )
}

pub fn multiplicities_to_matrix(mv: &MultiplicityVector) -> Gf2Mat {
    let mut cols = Vec::with_capacity(mv.sum() as usize);
    for (i, &c) in mv.counts.iter().enumerate() {
        for _ in 0..c {
            cols.push(Gf2Vec::from_raw(mv.dim, i as u32 + 1));
        }
    }
    Gf2Mat::new(mv.dim, cols).expect("dimension already checked")
}

/// Every hyperplane load is at most `b`.
pub fn feasible(mv: &MultiplicityVector, b: u64) -> bool {
    mv.hyperplane_loads().into_iter().all(|l| l <= b)
}

/// `b - load(u)` for every nonzero `u`; negative entries mark violations.
pub fn slack_profile(mv: &MultiplicityVector, b: u64) -> Vec<i64> {
    mv.hyperplane_loads()
        .into_iter()
        .map(|l| b as i64 - l as i64)
        .collect()
}

/// Parses the matrix text format: a header line `k m p`, then `k` rows of
/// `m` space-separated 0/1 digits, row `i` giving coordinate `i` of every
/// column.
pub fn parse_matrix_text(text: &str) -> Result<(Gf2Mat, usize)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header `k m p`".into(),
    })?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    if nums.len() != 3 {
        return Err(Error::Parse {
            line: hl,
            msg: format!("header needs 3 integers, found {}", nums.len()),
        });
    }
    let parse = |s: &str| {
        s.parse::<usize>().map_err(|_| Error::Parse {
            line: hl,
            msg: format!("not a non-negative integer: {s:?}"),
        })
    };
    let (k, m, p) = (parse(nums[0])?, parse(nums[1])?, parse(nums[2])?);
    check_dim(k as u32).map_err(|e| Error::Parse {
        line: hl,
        msg: e.to_string(),
    })?;
    let mut cols = vec![0u32; m];
    for i in 0..k {
        let (ln, row) = lines.next().ok_or(Error::Parse {
            line: hl + i + 1,
            msg: format!("expected {k} rows, found {i}"),
        })?;
        let toks: Vec<&str> = row.split_whitespace().collect();
        if toks.len() != m {
            return Err(Error::Parse {
                line: ln,
                msg: format!("row has {} entries, expected {m}", toks.len()),
            });
        }
        for (j, t) in toks.iter().enumerate() {
            match *t {
                "0" => {}
                "1" => cols[j] |= 1 << i,
                other => {
                    return Err(Error::Parse {
                        line: ln,
                        msg: format!("entry {other:?} is not 0 or 1"),
                    })
                }
            }
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::Parse {
            line: ln,
            msg: "trailing content after matrix rows".into(),
        });
    }
    Ok((Gf2Mat::from_bits(k as u32, &cols)?, p))
}

pub fn format_matrix_text(a: &Gf2Mat, p: usize) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {} {}", a.dim(), a.len(), p);
    for i in 1..=a.dim() {
        let row: Vec<&str> = a
            .columns()
            .iter()
            .map(|c| if c.coord(i) { "1" } else { "0" })
            .collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

/// Applies an invertible change of basis to every column. `image[i]` is the
/// image of `e_(i+1)`.
pub fn transform_columns(a: &Gf2Mat, image: &[Gf2Vec]) -> Result<Gf2Mat> {
    if image.len() != a.dim() as usize {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: image.len() as u32,
        });
    }
    if gf2::rank(image)? != image.len() {
        return Err(Error::DependentBasis);
    }
    let cols: Vec<u32> = a
        .column_bits()
        .map(|c| {
            image
                .iter()
                .enumerate()
                .filter(|(i, _)| (c >> i) & 1 == 1)
                .fold(0, |acc, (_, g)| acc ^ g.bits())
        })
        .collect();
    Gf2Mat::from_bits(a.dim(), &cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(k: u32, cols: &[u32]) -> Gf2Mat {
        Gf2Mat::from_bits(k, cols).unwrap()
    }

    fn k4_b4() -> Gf2Mat {
        // the eight columns, read top row = coordinate 1
        mat(4, &[0b0001, 0b0010, 0b0100, 0b1000, 0b1110, 0b1101, 0b1011, 0b0111])
    }

    #[test]
    fn realizes_examples() {
        let a = mat(3, &[1, 2, 4, 7]);
        assert!(realizes_naive(&a, 3).unwrap());
        assert!(realizes_fast(&a, 3).unwrap());
        assert!(realizes_naive(&k4_b4(), 5).unwrap());
        assert!(realizes_fast(&k4_b4(), 5).unwrap());
        let rep = mat(2, &[1, 2, 3, 3]);
        assert!(!realizes_naive(&rep, 2).unwrap());
        assert!(!realizes_fast(&rep, 2).unwrap());
    }

    #[test]
    fn zero_column_case() {
        let a = mat(2, &[0, 1, 2]);
        // brute force over the three 2-subsets: {0,e1} and {0,e2} fail
        assert!(!realizes_naive(&a, 2).unwrap());
        assert!(!realizes_fast(&a, 2).unwrap());
    }

    #[test]
    fn repeated_triangle_blocks() {
        for p in 2..=5 {
            let cols: Vec<u32> = (0..p - 1).flat_map(|_| [1, 2, 3]).collect();
            let a = mat(2, &cols);
            assert!(realizes_fast(&a, p).unwrap());
            assert!(realizes_naive(&a, p).unwrap());
        }
    }

    #[test]
    fn p_range_checked() {
        let a = mat(2, &[1, 2, 3]);
        assert!(realizes_fast(&a, 0).is_err());
        assert!(realizes_naive(&a, 4).is_err());
    }

    #[test]
    fn multiplicity_conversions() {
        let (mv, z) = matrix_to_multiplicities(&mat(2, &[1, 1, 2]));
        assert_eq!(mv.counts(), &[2, 1, 0]);
        assert_eq!(z, 0);
        let (mv, z) = matrix_to_multiplicities(&Gf2Mat::empty(3).unwrap());
        assert_eq!(mv.sum(), 0);
        assert_eq!(z, 0);
        let (mv, z) = matrix_to_multiplicities(&mat(2, &[0, 0]));
        assert_eq!(mv.counts(), &[0, 0, 0]);
        assert_eq!(z, 2);

        let mv = MultiplicityVector::from_counts(2, vec![1, 1, 1]).unwrap();
        assert_eq!(multiplicities_to_matrix(&mv), mat(2, &[1, 2, 3]));
        assert!(multiplicities_to_matrix(&MultiplicityVector::zeros(4).unwrap()).is_empty());
        let uni = MultiplicityVector::from_counts(3, vec![2; 7]).unwrap();
        assert_eq!(multiplicities_to_matrix(&uni).len(), 14);
    }

    #[test]
    fn feasibility_examples() {
        let mv = MultiplicityVector::from_counts(2, vec![2, 2, 2]).unwrap();
        assert!(feasible(&mv, 2));
        assert_eq!(mv.sum(), 6);
        let uni = MultiplicityVector::from_counts(3, vec![1; 7]).unwrap();
        assert!(feasible(&uni, 3));
        assert_eq!(uni.sum(), 7);
        for k in 2..=4 {
            for b in 0..4u32 {
                let spike = MultiplicityVector::zeros(k).unwrap().with(5 % ((1 << k) - 1) + 1, b + 1).unwrap();
                assert!(!feasible(&spike, b as u64));
            }
        }
    }

    #[test]
    fn slack_examples() {
        for k in 2..=5 {
            let q = 2;
            let uni = MultiplicityVector::from_counts(k, vec![q; (1 << k) - 1]).unwrap();
            let b = hyperplane_size(k) * q as u64;
            assert!(slack_profile(&uni, b).iter().all(|&s| s == 0));
            let zero = MultiplicityVector::zeros(k).unwrap();
            assert!(slack_profile(&zero, 5).iter().all(|&s| s == 5));
        }
        let mv = MultiplicityVector::from_counts(2, vec![1, 0, 0]).unwrap();
        // only u=e2 is orthogonal to e1
        assert_eq!(slack_profile(&mv, 2), vec![2, 1, 2]);
    }

    #[test]
    fn transform_loads_match_direct_count() {
        let k = 9;
        let counts: Vec<u32> = (1..(1u32 << k)).map(|v| (v * 7 + v / 3) % 4).collect();
        let mv = MultiplicityVector::from_counts(k, counts).unwrap();
        let loads = mv.hyperplane_loads();
        for u in [1u32, 2, 77, 300, 511] {
            let direct: u64 = (1..(1u32 << k))
                .filter(|&v| dot_bits(u, v) == 0)
                .map(|v| mv.get(v) as u64)
                .sum();
            assert_eq!(loads[u as usize - 1], direct);
        }
    }

    #[test]
    fn constraint_problem_split() {
        let cp = ConstraintProblem::new(4, 7 * 3 + 5).unwrap();
        assert_eq!((cp.q, cp.r), (3, 5));
        assert_eq!(cp.hyperplane_size(), 7);
        assert!(ConstraintProblem::new(1, 3).is_err());
        // windows for k=5: [0,8), [8,12), [12,14), [14,15)
        let w: Vec<u32> = (0..15).map(|r| window_of(5, r)).collect();
        assert_eq!(w, vec![0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn matrix_text_roundtrip_and_errors() {
        let a = k4_b4();
        let txt = format_matrix_text(&a, 5);
        assert!(txt.starts_with("4 8 5\n1 0 0 0 0 1 1 1\n"));
        let (b, p) = parse_matrix_text(&txt).unwrap();
        assert_eq!((b, p), (a, 5));
        assert!(parse_matrix_text("2 2 1\n1 2\n0 1\n").is_err());
        assert!(parse_matrix_text("2 2 1\n1 0 1\n0 1\n").is_err());
        assert!(parse_matrix_text("2 2 1\n1 0\n").is_err());
        assert!(parse_matrix_text("").is_err());
        assert!(parse_matrix_text("1 1 1\n1\n").is_err());
    }

    #[test]
    fn change_of_basis_preserves_realizability() {
        let a = k4_b4();
        let image = [0b0011, 0b0010, 0b0100, 0b1001].map(|b| Gf2Vec::new(4, b).unwrap());
        let t = transform_columns(&a, &image).unwrap();
        assert!(realizes_fast(&t, 5).unwrap());
        assert!(!realizes_fast(&t, 4).unwrap());
    }
}
