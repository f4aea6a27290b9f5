//! Exact dense rank computation over a prime field F_p.
//!
//! Elimination uses delayed reduction when the modulus allows it: the pivot
//! row is reduced and normalised once, and target rows accumulate
//! `mult * pivot` products in raw `u64`s, deferring the expensive `% p` to
//! the moment an entry is actually inspected. With p < 2^24 and fewer than
//! 2^15 pivot steps the accumulators stay below 2^63.

use crate::error::{Error, Result};

/// Default modulus for all rank computations.
pub const DEFAULT_PRIME: u64 = 31991;

/// A validated odd prime modulus, below 2^31 so products fit in a `u64`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField> {
        if p <= 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn default_field() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).expect("default modulus is prime")
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn reduce_i64(self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        a * b % self.p
    }

    fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A dense row-major matrix over F_p. Entries are kept in `[0, p)` at the
/// API boundary; elimination may hold unreduced values internally.
#[derive(Clone, Debug)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> FieldMatrix {
        FieldMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<FieldMatrix> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        let mut m = FieldMatrix::zeros(field, height, width);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.data[i * width + j] = field.reduce_i64(v);
            }
        }
        Ok(m)
    }

    /// Accumulate sparse triplets into a dense matrix.
    pub fn from_triplets(
        field: PrimeField,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(field, rows, cols);
        for (r, c, v) in triplets {
            debug_assert!(r < rows && c < cols);
            let e = &mut m.data[r * cols + c];
            *e = (*e + v) % field.modulus();
        }
        m
    }

    /// Concatenate blocks side by side; all blocks must share a row count.
    pub fn hstack(field: PrimeField, blocks: &[FieldMatrix]) -> Result<FieldMatrix> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::InvalidArgument("hstack: row counts differ".into()));
        }
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = FieldMatrix::zeros(field, rows, cols);
        for r in 0..rows {
            let mut offset = 0;
            for b in blocks {
                m.data[r * cols + offset..r * cols + offset + b.cols]
                    .copy_from_slice(&b.data[r * b.cols..(r + 1) * b.cols]);
                offset += b.cols;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c] % self.field.p
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        debug_assert!(v < self.field.p);
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        m
    }

    /// Rank over F_p. Consumes the matrix; the storage is overwritten by the
    /// elimination. Deterministic: pivots are chosen first-nonzero in column
    /// order.
    pub fn rank(self) -> usize {
        let mut m = if self.rows > self.cols { self.transpose() } else { self };
        if m.rows == 0 || m.cols == 0 {
            return 0;
        }
        let p = m.field.p;
        let steps = m.rows as u64;
        let delayed_safe = (p - 1)
            .checked_mul(p - 1)
            .and_then(|sq| sq.checked_mul(steps + 1))
            .and_then(|acc| acc.checked_add(p))
            .is_some();
        if delayed_safe {
            m.rank_delayed()
        } else {
            m.rank_reducing()
        }
    }

    /// Nullity: `cols - rank`.
    pub fn kernel_dim(self) -> usize {
        let cols = self.cols;
        cols - self.rank()
    }

    fn rank_delayed(&mut self) -> usize {
        let p = self.field.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0usize;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| self.data[r * cols + col] % p != 0) else {
                continue;
            };
            self.swap_rows(rank, pivot);
            // reduce the pivot row once and scale its leading entry to 1
            {
                let row = &mut self.data[rank * cols..(rank + 1) * cols];
                for e in row[col..].iter_mut() {
                    *e %= p;
                }
                let inv = self.field.inv(row[col]);
                if inv != 1 {
                    for e in row[col..].iter_mut() {
                        *e = *e * inv % p;
                    }
                }
            }
            for r in rank + 1..rows {
                let lead = self.data[r * cols + col] % p;
                if lead == 0 {
                    continue;
                }
                let mult = p - lead;
                let (top, bottom) = self.data.split_at_mut(r * cols);
                let prow = &top[rank * cols + col..rank * cols + cols];
                let trow = &mut bottom[col..cols];
                for (t, &s) in trow.iter_mut().zip(prow) {
                    *t += mult * s;
                }
            }
            rank += 1;
        }
        rank
    }

    fn rank_reducing(&mut self) -> usize {
        let p = self.field.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0usize;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| self.data[r * cols + col] != 0) else {
                continue;
            };
            self.swap_rows(rank, pivot);
            let inv = self.field.inv(self.data[rank * cols + col]);
            {
                let row = &mut self.data[rank * cols..(rank + 1) * cols];
                for e in row[col..].iter_mut() {
                    *e = *e * inv % p;
                }
            }
            for r in rank + 1..rows {
                let lead = self.data[r * cols + col];
                if lead == 0 {
                    continue;
                }
                let mult = p - lead;
                let (top, bottom) = self.data.split_at_mut(r * cols);
                let prow = &top[rank * cols + col..rank * cols + cols];
                let trow = &mut bottom[col..cols];
                for (t, &s) in trow.iter_mut().zip(prow) {
                    *t = (*t + mult * s) % p;
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let cols = self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (top, bottom) = self.data.split_at_mut(hi * cols);
        top[lo * cols..(lo + 1) * cols].swap_with_slice(&mut bottom[..cols]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::default_field()
    }

    fn identity(n: usize) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(field(), n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Deterministic fill for randomized shape tests.
    fn pseudo_random(rows: usize, cols: usize, seed: u64) -> FieldMatrix {
        let mut state = seed;
        let mut next = move || {
            state = state.wrapping_add(0x9E3779B97F4A7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
            z ^ (z >> 31)
        };
        let f = field();
        let mut m = FieldMatrix::zeros(f, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, next() % f.modulus());
            }
        }
        m
    }

    #[test]
    fn prime_validation() {
        assert!(PrimeField::new(31991).is_ok());
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(31989).is_err()); // 3 * 10663
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(101).is_ok());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(identity(5).rank(), 5);
        assert_eq!(FieldMatrix::zeros(field(), 3, 7).rank(), 0);
        let m = FieldMatrix::from_rows(field(), &[vec![1, 2, 3], vec![2, 4, 6]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(identity(5).kernel_dim(), 0);
        assert_eq!(FieldMatrix::zeros(field(), 3, 7).kernel_dim(), 7);
        let m = FieldMatrix::from_rows(field(), &[vec![1, 1, 1, 1]]).unwrap();
        assert_eq!(m.kernel_dim(), 3);
    }

    #[test]
    fn negative_entries_reduce() {
        let m = FieldMatrix::from_rows(field(), &[vec![-1, 1], vec![1, -1]]).unwrap();
        assert_eq!(m.get(0, 0), 31990);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rank_equals_transpose_rank() {
        for (rows, cols, seed) in [(20, 20, 1u64), (50, 17, 2), (17, 50, 3), (200, 200, 4)] {
            let m = pseudo_random(rows, cols, seed);
            assert_eq!(m.clone().rank(), m.transpose().rank());
        }
    }

    #[test]
    fn rank_is_row_order_invariant() {
        let m = pseudo_random(40, 23, 7);
        let mut shuffled = m.clone();
        // a fixed derangement-ish permutation of rows
        for i in 0..shuffled.rows() / 2 {
            shuffled.swap_rows(i, shuffled.rows() - 1 - i);
        }
        assert_eq!(m.rank(), shuffled.rank());
    }

    #[test]
    fn hstack_and_triplets() {
        let f = field();
        let a = FieldMatrix::from_triplets(f, 2, 2, [(0, 0, 1), (1, 1, 1), (1, 1, 31990)]);
        assert_eq!(a.get(1, 1), 31990 + 1 - 31991); // accumulated past p and reduced
        let b = FieldMatrix::from_rows(f, &[vec![5], vec![6]]).unwrap();
        let s = FieldMatrix::hstack(f, &[a, b]).unwrap();
        assert_eq!((s.rows(), s.cols()), (2, 3));
        assert_eq!(s.get(0, 0), 1);
        assert_eq!(s.get(1, 2), 6);
    }

    /// Fraction-free integer elimination (Bareiss) as a rational-rank oracle.
    fn rational_rank(rows: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<i128>> =
            rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
        if a.is_empty() || a[0].is_empty() {
            return 0;
        }
        let (m, n) = (a.len(), a[0].len());
        let mut rank = 0;
        let mut prev = 1i128;
        for col in 0..n {
            let Some(piv) = (rank..m).find(|&r| a[r][col] != 0) else { continue };
            a.swap(rank, piv);
            for r in rank + 1..m {
                for c in col + 1..n {
                    a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev;
                }
                a[r][col] = 0;
            }
            prev = a[rank][col];
            rank += 1;
            if rank == m {
                break;
            }
        }
        rank
    }

    #[test]
    fn full_rank_mod_p_certifies_rational_rank() {
        // entries in {-1, 0, 1}: rank over F_p can only be <= the rational
        // rank, so hitting min(rows, cols) certifies it.
        let mut state = 99u64;
        let mut next = move || {
            state = state.wrapping_add(0x9E3779B97F4A7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
            z ^ (z >> 31)
        };
        for _ in 0..200 {
            let rows = 1 + (next() % 7) as usize;
            let cols = 1 + (next() % 7) as usize;
            let entries: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| (next() % 3) as i64 - 1).collect())
                .collect();
            let modp = FieldMatrix::from_rows(field(), &entries).unwrap().rank();
            let rational = rational_rank(&entries);
            assert!(modp <= rational);
            if modp == rows.min(cols) {
                assert_eq!(rational, rows.min(cols));
            }
        }
    }

    #[test]
    fn delayed_and_reducing_paths_agree() {
        // a large modulus forces the per-step reducing path
        let big = PrimeField::new((1 << 30) + 3).unwrap_or_else(|_| field());
        for seed in 0..5u64 {
            let m = pseudo_random(30, 30, seed);
            let mut n = FieldMatrix::zeros(big, 30, 30);
            for r in 0..30 {
                for c in 0..30 {
                    n.set(r, c, m.get(r, c));
                }
            }
            // ranks agree because entries are small and generic
            assert_eq!(m.rank(), n.rank());
        }
    }
}
