//! Bit-level linear algebra over Z/2.
//!
//! A vector of `(Z/2)^k` is packed into the low `k` bits of an integer, with
//! coordinate `i` (1-based) stored in bit `i - 1`. The nonzero vectors, listed
//! by increasing encoding `1, 2, ..., 2^k - 1`, give the canonical index order
//! used throughout the crate: vector `v` lives at index `v - 1`.

use std::fmt;

use crate::error::{Error, Result};

pub const MIN_DIM: u32 = 2;
pub const MAX_DIM: u32 = 16;

pub(crate) fn check_dim(k: u32) -> Result<()> {
    if (MIN_DIM..=MAX_DIM).contains(&k) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(k))
    }
}

/// Parity of the population count of `u & v`.
#[inline]
pub(crate) fn dot_bits(u: u32, v: u32) -> u32 {
    (u & v).count_ones() & 1
}

/// An element of `(Z/2)^k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vec {
    dim: u32,
    bits: u32,
}

impl Gf2Vec {
    pub fn new(dim: u32, bits: u32) -> Result<Self> {
        check_dim(dim)?;
        if bits >> dim != 0 {
            return Err(Error::OutOfRange(format!(
                "encoding {bits:#b} does not fit in {dim} bits"
            )));
        }
        Ok(Gf2Vec { dim, bits })
    }

    pub fn zero(dim: u32) -> Result<Self> {
        Self::new(dim, 0)
    }

    /// The standard basis vector `e_i`, `1 <= i <= dim`.
    pub fn basis(dim: u32, i: u32) -> Result<Self> {
        if i == 0 || i > dim {
            return Err(Error::OutOfRange(format!("basis index {i} for dim {dim}")));
        }
        Self::new(dim, 1 << (i - 1))
    }

    /// `(1, 1, ..., 1)`.
    pub fn all_ones(dim: u32) -> Result<Self> {
        check_dim(dim)?;
        Ok(Gf2Vec {
            dim,
            bits: (1u32 << dim) - 1,
        })
    }

    // Callers guarantee the invariants.
    pub(crate) fn from_raw(dim: u32, bits: u32) -> Self {
        debug_assert!(bits >> dim == 0);
        Gf2Vec { dim, bits }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Coordinate `i` (1-based).
    pub fn coord(&self, i: u32) -> bool {
        i >= 1 && i <= self.dim && (self.bits >> (i - 1)) & 1 == 1
    }

    /// Position in the canonical nonzero order, `None` for the zero vector.
    pub fn index(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits as usize - 1)
    }

    pub fn add(&self, other: &Gf2Vec) -> Result<Gf2Vec> {
        same_dim(self, other)?;
        Ok(Gf2Vec::from_raw(self.dim, self.bits ^ other.bits))
    }
}

impl fmt::Debug for Gf2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vec(")?;
        for i in 1..=self.dim {
            write!(f, "{}", u8::from(self.coord(i)))?;
        }
        write!(f, ")")
    }
}

fn same_dim(u: &Gf2Vec, v: &Gf2Vec) -> Result<()> {
    if u.dim == v.dim {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            left: u.dim,
            right: v.dim,
        })
    }
}

/// The standard bilinear pairing `(u, v)`.
pub fn dot(u: &Gf2Vec, v: &Gf2Vec) -> Result<bool> {
    same_dim(u, v)?;
    Ok(dot_bits(u.bits, v.bits) == 1)
}

/// Dimension of the span, by elimination on packed bits.
pub fn rank(vectors: &[Gf2Vec]) -> Result<usize> {
    if let Some(first) = vectors.first() {
        for v in vectors {
            same_dim(first, v)?;
        }
    }
    Ok(rank_bits(vectors.iter().map(|v| v.bits)))
}

/// Rank of packed vectors. `pivots[b]` holds a reduced vector whose highest
/// set bit is `b`.
pub(crate) fn rank_bits(vectors: impl IntoIterator<Item = u32>) -> usize {
    let mut pivots = [0u32; 32];
    let mut r = 0;
    for mut x in vectors {
        while x != 0 {
            let top = 31 - x.leading_zeros() as usize;
            if pivots[top] == 0 {
                pivots[top] = x;
                r += 1;
                break;
            }
            x ^= pivots[top];
        }
    }
    r
}

/// Whether the vectors span all of `(Z/2)^k`.
pub fn spans_full(vectors: &[Gf2Vec], k: u32) -> Result<bool> {
    check_dim(k)?;
    for v in vectors {
        if v.dim != k {
            return Err(Error::DimensionMismatch {
                left: k,
                right: v.dim,
            });
        }
    }
    Ok(rank(vectors)? == k as usize)
}

/// All nonzero vectors of `(Z/2)^k` in canonical order.
pub fn nonzero_vectors(k: u32) -> Result<Vec<Gf2Vec>> {
    check_dim(k)?;
    Ok((1..(1u32 << k)).map(|b| Gf2Vec::from_raw(k, b)).collect())
}

/// Every member of the span of an independent list, zero included. Member
/// `c` is the combination whose coefficient on `basis[i]` is bit `i` of `c`.
pub fn subspace_members(basis: &[Gf2Vec]) -> Result<Vec<Gf2Vec>> {
    let Some(first) = basis.first() else {
        // the span of nothing is {0}; without a vector we cannot know k, so
        // the zero vector is reported at the smallest supported dimension
        return Ok(vec![Gf2Vec::from_raw(MIN_DIM, 0)]);
    };
    let dim = first.dim;
    if rank(basis)? != basis.len() {
        return Err(Error::DependentBasis);
    }
    let d = basis.len();
    let mut out = Vec::with_capacity(1 << d);
    for c in 0u32..(1 << d) {
        let mut x = 0;
        for (i, b) in basis.iter().enumerate() {
            if (c >> i) & 1 == 1 {
                x ^= b.bits;
            }
        }
        out.push(Gf2Vec::from_raw(dim, x));
    }
    Ok(out)
}

/// Like [`subspace_members`] but with an explicit ambient dimension, so the
/// empty basis yields the zero vector of the right size.
pub fn subspace_members_in(k: u32, basis: &[Gf2Vec]) -> Result<Vec<Gf2Vec>> {
    check_dim(k)?;
    for v in basis {
        if v.dim != k {
            return Err(Error::DimensionMismatch {
                left: k,
                right: v.dim,
            });
        }
    }
    if basis.is_empty() {
        return Ok(vec![Gf2Vec::from_raw(k, 0)]);
    }
    subspace_members(basis)
}

/// A `k x m` matrix over Z/2 stored as its columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Mat {
    dim: u32,
    columns: Vec<Gf2Vec>,
}

impl Gf2Mat {
    pub fn new(dim: u32, columns: Vec<Gf2Vec>) -> Result<Self> {
        check_dim(dim)?;
        for c in &columns {
            if c.dim != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: c.dim,
                });
            }
        }
        Ok(Gf2Mat { dim, columns })
    }

    pub fn from_bits(dim: u32, columns: &[u32]) -> Result<Self> {
        let cols = columns
            .iter()
            .map(|&b| Gf2Vec::new(dim, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Gf2Mat { dim, columns: cols })
    }

    pub fn empty(dim: u32) -> Result<Self> {
        Self::new(dim, Vec::new())
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Number of columns `m`.
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &[Gf2Vec] {
        &self.columns
    }

    pub fn column_bits(&self) -> impl Iterator<Item = u32> + '_ {
        self.columns.iter().map(|c| c.bits)
    }

    pub fn push(&mut self, col: Gf2Vec) -> Result<()> {
        if col.dim != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: col.dim,
            });
        }
        self.columns.push(col);
        Ok(())
    }

    pub fn rank(&self) -> usize {
        rank_bits(self.column_bits())
    }

    /// Entry in row `i`, column `j` (both 1-based).
    pub fn entry(&self, i: u32, j: usize) -> bool {
        self.columns[j - 1].coord(i)
    }
}

impl fmt::Debug for Gf2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Mat {}x{}", self.dim, self.columns.len())?;
        for i in 1..=self.dim {
            for (j, c) in self.columns.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", u8::from(c.coord(i)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// For each nonzero `v`, the nonzero `u` with `(u, v) = 0`, i.e. the
/// hyperplanes `u^⊥` containing `v`. Every row has `2^(k-1) - 1` entries.
#[derive(Debug, Clone)]
pub(crate) struct Incidence {
    k: u32,
    row_len: usize,
    // flat, row `v - 1` lists hyperplane indices `u - 1`
    table: Vec<u16>,
}

impl Incidence {
    /// Tables are materialized up to this dimension; beyond it rows are
    /// recomputed on demand.
    const TABLE_MAX_DIM: u32 = 12;

    pub(crate) fn new(k: u32) -> Self {
        let n = (1usize << k) - 1;
        let row_len = (1usize << (k - 1)) - 1;
        let mut table = Vec::new();
        if k <= Self::TABLE_MAX_DIM {
            table.reserve(n * row_len);
            for v in 1..=n as u32 {
                for u in 1..=n as u32 {
                    if dot_bits(u, v) == 0 {
                        table.push((u - 1) as u16);
                    }
                }
            }
        }
        Incidence { k, row_len, table }
    }

    pub(crate) fn for_each(&self, v_index: usize, mut f: impl FnMut(usize)) {
        if self.table.is_empty() {
            let v = v_index as u32 + 1;
            for u in 1..(1u32 << self.k) {
                if dot_bits(u, v) == 0 {
                    f(u as usize - 1);
                }
            }
        } else {
            let row = &self.table[v_index * self.row_len..(v_index + 1) * self.row_len];
            for &u in row {
                f(u as usize);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(k: u32, i: u32) -> Gf2Vec {
        Gf2Vec::basis(k, i).unwrap()
    }

    #[test]
    fn dot_examples() {
        let k = 3;
        assert!(dot(&e(k, 1), &e(k, 1)).unwrap());
        assert!(!dot(&e(k, 1), &e(k, 2)).unwrap());
        let a = e(k, 1).add(&e(k, 3)).unwrap();
        let b = Gf2Vec::all_ones(k).unwrap();
        assert!(!dot(&a, &b).unwrap());
        assert!(matches!(
            dot(&e(3, 1), &e(4, 1)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rank_examples() {
        let k = 3;
        assert_eq!(rank(&[e(k, 1), e(k, 2), e(k, 3)]).unwrap(), 3);
        let s = e(k, 1).add(&e(k, 2)).unwrap();
        assert_eq!(rank(&[e(k, 1), e(k, 2), s]).unwrap(), 2);
        assert_eq!(rank(&[]).unwrap(), 0);
        assert!(rank(&[e(3, 1), e(4, 2)]).is_err());
    }

    #[test]
    fn spans_full_examples() {
        assert!(spans_full(&[e(4, 1), e(4, 2), e(4, 3), e(4, 4)], 4).unwrap());
        let cols = [e(3, 1), e(3, 2), e(3, 3), Gf2Vec::all_ones(3).unwrap()];
        for skip in 0..4 {
            let three: Vec<_> = (0..4).filter(|&i| i != skip).map(|i| cols[i]).collect();
            assert!(spans_full(&three, 3).unwrap());
        }
        assert!(!spans_full(&[e(3, 1), e(3, 2)], 3).unwrap());
    }

    #[test]
    fn nonzero_vector_order() {
        let v2 = nonzero_vectors(2).unwrap();
        assert_eq!(
            v2.iter().map(|v| v.bits()).collect::<Vec<_>>(),
            vec![0b01, 0b10, 0b11]
        );
        let v3 = nonzero_vectors(3).unwrap();
        assert_eq!(v3.len(), 7);
        assert_eq!(v3[0], e(3, 1));
        assert_eq!(v3[6], Gf2Vec::all_ones(3).unwrap());
        assert_eq!(nonzero_vectors(5).unwrap().len(), 31);
        assert_eq!(nonzero_vectors(1), Err(Error::UnsupportedDimension(1)));
        assert_eq!(nonzero_vectors(17), Err(Error::UnsupportedDimension(17)));
    }

    #[test]
    fn subspace_member_counts() {
        let one = subspace_members(&[e(3, 1)]).unwrap();
        assert_eq!(one, vec![Gf2Vec::zero(3).unwrap(), e(3, 1)]);
        assert_eq!(subspace_members(&[e(3, 1), e(3, 2)]).unwrap().len(), 4);
        assert_eq!(
            subspace_members_in(4, &[]).unwrap(),
            vec![Gf2Vec::zero(4).unwrap()]
        );
        let s = e(3, 1).add(&e(3, 2)).unwrap();
        assert_eq!(
            subspace_members(&[e(3, 1), e(3, 2), s]),
            Err(Error::DependentBasis)
        );
    }

    #[test]
    fn vector_encoding_bounds() {
        assert!(Gf2Vec::new(3, 8).is_err());
        assert!(Gf2Vec::new(3, 7).is_ok());
        assert_eq!(e(5, 3).index(), Some(3));
        assert_eq!(Gf2Vec::zero(5).unwrap().index(), None);
    }

    #[test]
    fn bilinearity_exhaustive() {
        for k in 2..=4 {
            let n = 1u32 << k;
            for u in 0..n {
                for u2 in 0..n {
                    for v in 0..n {
                        assert_eq!(dot_bits(u ^ u2, v), dot_bits(u, v) ^ dot_bits(u2, v));
                        assert_eq!(dot_bits(u, v), dot_bits(v, u));
                    }
                }
            }
        }
    }

    #[test]
    fn hyperplane_counting_exhaustive() {
        for k in 2..=6u32 {
            let n = 1u32 << k;
            let h = (1u32 << (k - 1)) - 1;
            for v in 1..n {
                let c = (1..n).filter(|&u| dot_bits(u, v) == 0).count() as u32;
                assert_eq!(c, h);
                for v2 in 1..n {
                    if v2 == v {
                        continue;
                    }
                    let c2 = (1..n)
                        .filter(|&u| dot_bits(u, v) == 0 && dot_bits(u, v2) == 0)
                        .count() as u32;
                    assert_eq!(c2, (1 << (k - 2)) - 1);
                }
            }
        }
    }

    #[test]
    fn incidence_rows() {
        let inc = Incidence::new(4);
        let mut seen = Vec::new();
        inc.for_each(0, |u| seen.push(u as u32 + 1));
        assert!(seen.iter().all(|&u| dot_bits(u, 1) == 0));
        assert_eq!(seen.len(), 7);
    }
}
