use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sparse square matrix over the rationals, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    dim: usize,
    rows: Vec<BTreeMap<usize, BigRational>>,
}

/// Sparse vector: index -> nonzero entry.
pub type SparseVec = BTreeMap<usize, BigRational>;

fn accumulate(row: &mut BTreeMap<usize, BigRational>, col: usize, v: BigRational) {
    if v.is_zero() {
        return;
    }
    let e = row.entry(col).or_insert_with(BigRational::zero);
    *e += v;
    if e.is_zero() {
        row.remove(&col);
    }
}

impl RatMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            rows: vec![BTreeMap::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_entries(dim, (0..dim).map(|i| (i, i, BigRational::one())))
    }

    /// Sums repeated positions. Panics on an out-of-range index.
    pub fn from_entries<I>(dim: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, BigRational)>,
    {
        let mut m = Self::zeros(dim);
        for (r, c, v) in entries {
            assert!(r < dim && c < dim, "entry ({r},{c}) outside {dim}x{dim}");
            accumulate(&mut m.rows[r], c, v);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        self.rows[r]
            .get(&c)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, BigRational> {
        &self.rows[r]
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = Self::zeros(self.dim);
        for (r, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                for (c, b) in &rhs.rows[*k] {
                    accumulate(&mut out.rows[r], *c, a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, &BigRational::one())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, &-BigRational::one())
    }

    fn combine(&self, rhs: &Self, sign: &BigRational) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (r, c, v) in rhs.entries() {
            accumulate(&mut out.rows[r], c, v * sign);
        }
        out
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::from_entries(self.dim, self.entries().map(|(r, c, v)| (r, c, v * s)))
    }

    /// Commutator `AB - BA`.
    pub fn bracket(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Kronecker product; index `(i, j)` maps to `i * b.dim + j`.
    pub fn kron(&self, b: &Self) -> Self {
        let n = b.dim;
        Self::from_entries(
            self.dim * n,
            self.entries().flat_map(|(r1, c1, v1)| {
                b.entries()
                    .map(move |(r2, c2, v2)| (r1 * n + r2, c1 * n + c2, v1 * v2))
            }),
        )
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc = BigRational::zero();
            for (c, a) in row {
                if let Some(x) = v.get(c) {
                    acc += a * x;
                }
            }
            if !acc.is_zero() {
                out.insert(r, acc);
            }
        }
        out
    }

    /// Largest absolute numerator over all entries; zero for the zero matrix.
    pub fn max_abs_numerator(&self) -> BigInt {
        self.entries()
            .map(|(_, _, v)| v.numer().abs())
            .max()
            .unwrap_or_default()
    }

    /// Dense block `rows x cols` picked out by index lists.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<BigRational>> {
        let col_pos: BTreeMap<usize, usize> =
            cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        rows.iter()
            .map(|&r| {
                let mut dense = vec![BigRational::zero(); cols.len()];
                for (c, v) in &self.rows[r] {
                    if let Some(&j) = col_pos.get(c) {
                        dense[j] = v.clone();
                    }
                }
                dense
            })
            .collect()
    }
}

/// Rank of a dense rational matrix by Gaussian elimination.
pub fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].recip();
        let pivot_row: Vec<BigRational> = m[rank].iter().map(|v| v * &inv).collect();
        for row in m.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (c, pv) in pivot_row.iter().enumerate().skip(col) {
                row[c] -= pv * &f;
            }
        }
        m[rank] = pivot_row;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Rank of a set of sparse vectors of length `len`.
pub fn span_rank(vectors: &[SparseVec], len: usize) -> usize {
    let dense = vectors
        .iter()
        .map(|v| {
            let mut row = vec![BigRational::zero(); len];
            for (i, x) in v {
                row[*i] = x.clone();
            }
            row
        })
        .collect();
    rank(dense)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn frac(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn mul_matches_dense_definition() {
        let a = RatMatrix::from_entries(3, [(0, 1, q(2)), (1, 2, q(3)), (2, 0, frac(1, 2))]);
        let b = RatMatrix::from_entries(3, [(0, 0, q(1)), (1, 1, q(-1)), (2, 1, q(5))]);
        let ab = a.mul(&b);
        for r in 0..3 {
            for c in 0..3 {
                let mut s = q(0);
                for k in 0..3 {
                    s += a.get(r, k) * b.get(k, c);
                }
                assert_eq!(ab.get(r, c), s);
            }
        }
    }

    #[test]
    fn identity_and_zero() {
        let a = RatMatrix::from_entries(2, [(0, 1, q(7)), (1, 0, frac(-3, 4))]);
        assert_eq!(a.mul(&RatMatrix::identity(2)), a);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.sub(&a).nnz(), 0);
        assert_eq!(a.max_abs_numerator(), BigInt::from(7));
    }

    #[test]
    fn kron_with_identity_preserves_products() {
        let a = RatMatrix::from_entries(2, [(0, 1, q(1))]);
        let b = RatMatrix::from_entries(2, [(1, 0, q(1))]);
        let i = RatMatrix::identity(3);
        assert_eq!(a.kron(&i).mul(&b.kron(&i)), a.mul(&b).kron(&i));
        assert_eq!(a.kron(&i).dim(), 6);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(vec![vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(rank(vec![vec![q(0), q(1)], vec![q(1), q(0)]]), 2);
        assert_eq!(rank(vec![vec![frac(1, 3), q(1), q(0)]]), 1);
        assert_eq!(rank(vec![vec![q(0); 3]; 2]), 0);
        assert_eq!(rank(Vec::new()), 0);
        assert_eq!(
            rank(vec![
                vec![q(1), q(1), q(0)],
                vec![q(0), q(1), q(1)],
                vec![q(1), q(2), q(1)],
            ]),
            2
        );
    }
}
