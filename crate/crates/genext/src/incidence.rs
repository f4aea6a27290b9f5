//! Signed incidence matrices of a-subsets into b-subsets, the signed subset
//! sums `s_r(A, B)` and `s_{d,n}`, and executable checks of the supporting
//! lemmas and of the full-rank theorem for even cardinality difference.
//!
//! The subset-sum identity is implemented with the exponent `(r-a)(b-r)`;
//! the commonly quoted `(-1)^{b-r}` only matches when `(b-r)(r-a-1)` is
//! even, and brute-force enumeration (see the tests and the sweep below)
//! pins the corrected form.

use std::collections::HashMap;

use crate::combin::{self, binom_u64, sigma, Monomial};
use crate::error::{Error, Result};
use crate::linalg::{FieldMatrix, PrimeField};

/// The signed incidence matrix: rows are b-subsets of `[n]`, columns are
/// a-subsets, both in colex order; the entry at `(B, A)` is `sigma(A, B)`.
#[derive(Clone, Debug)]
pub struct SignedIncidence {
    pub a: u32,
    pub b: u32,
    pub n: u32,
    rows: usize,
    cols: usize,
    entries: Vec<i8>,
}

impl SignedIncidence {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> i8 {
        self.entries[row * self.cols + col]
    }

    /// Reduce the ±1 entries into F_p.
    pub fn to_field(&self, field: PrimeField) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(field, self.rows, self.cols);
        let p = field.modulus();
        for r in 0..self.rows {
            for c in 0..self.cols {
                match self.entries[r * self.cols + c] {
                    1 => m.set(r, c, 1),
                    -1 => m.set(r, c, p - 1),
                    _ => {}
                }
            }
        }
        m
    }
}

/// Build the signed incidence matrix for `0 < a < b <= n`.
pub fn build_signed(a: u32, b: u32, n: u32) -> Result<SignedIncidence> {
    if !(0 < a && a < b && b <= n) || n > combin::MAX_VARS {
        return Err(Error::InvalidArgument(format!(
            "require 0 < a < b <= n <= {}, got (a, b, n) = ({a}, {b}, {n})",
            combin::MAX_VARS
        )));
    }
    let rows = binom_u64(n, b) as usize;
    let cols = binom_u64(n, a) as usize;
    let mut entries = vec![0i8; rows * cols];
    for (r, bset) in combin::subsets(n, b).enumerate() {
        for aset in combin::subsets_of(bset, a) {
            let c = combin::rank_subset(aset) as usize;
            entries[r * cols + c] = sigma(aset, bset).value();
        }
    }
    Ok(SignedIncidence { a, b, n, rows, cols, entries })
}

/// The signed sum `s_r(A, B, n) = sum of sigma(C, B)` over all `C` with
/// `A ⊆ C ⊆ B` and `|C| = r`. Zero when `A` is not contained in `B`.
pub fn s_r(a_set: Monomial, b_set: Monomial, r: u32, n: u32) -> Result<i64> {
    let (a, b) = (a_set.degree(), b_set.degree());
    if !(a <= r && r < b) {
        return Err(Error::InvalidArgument(format!(
            "require |A| <= r < |B|, got |A| = {a}, r = {r}, |B| = {b}"
        )));
    }
    if n > combin::MAX_VARS || !Monomial::full(n).contains(b_set) {
        return Err(Error::InvalidArgument("B does not fit in [n]".into()));
    }
    if !b_set.contains(a_set) {
        return Ok(0);
    }
    let mut total = 0i64;
    for extra in combin::subsets_of(b_set.minus(a_set), r - a) {
        total += i64::from(sigma(a_set.union(extra), b_set).value());
    }
    Ok(total)
}

/// `s_{d,n}`: the signed count of d-subsets of `[n]`, via the recursion over
/// the smallest two elements. Writing `R = {i, j} ∪ R₂` with `i < j` its two
/// smallest elements,
/// `sigma(R, [n]) = (-1)^{i + (d-1)j + 1} sigma(R₂ - j, [n - j])`,
/// so `s_{d,n} = sum over 1 <= i < j of that sign times s_{d-2, n-j}`.
pub fn s_dn(d: u32, n: u32) -> i64 {
    let mut memo = HashMap::new();
    s_dn_memo(d, n, &mut memo)
}

fn s_dn_memo(d: u32, n: u32, memo: &mut HashMap<(u32, u32), i64>) -> i64 {
    if d > n {
        return 0;
    }
    if d == 0 {
        return 1;
    }
    if d == 1 {
        // alternating sum +1 -1 +1 ... over the n singletons
        return if n % 2 == 1 { 1 } else { 0 };
    }
    if let Some(&v) = memo.get(&(d, n)) {
        return v;
    }
    let mut total = 0i64;
    for j in 2..=n - d + 2 {
        let inner = s_dn_memo(d - 2, n - j, memo);
        if inner == 0 {
            continue;
        }
        for i in 1..j {
            let exponent = i as u64 + (d as u64 - 1) * j as u64 + 1;
            total += if exponent % 2 == 0 { inner } else { -inner };
        }
    }
    memo.insert((d, n), total);
    total
}

/// Brute-force reference for [`s_dn`]: enumerate every subset.
pub fn s_dn_enumerate(d: u32, n: u32) -> i64 {
    if d > n {
        return 0;
    }
    combin::subsets(n, d)
        .map(|r| i64::from(sigma(r, Monomial::full(n)).value()))
        .sum()
}

/// One counterexample to the subset-sum identity.
#[derive(Clone, Debug)]
pub struct SindepViolation {
    pub a_set: Monomial,
    pub b_set: Monomial,
    pub r: u32,
    pub n: u32,
    pub got: i64,
    pub expected: i64,
}

/// Report of a subset-sum identity sweep.
#[derive(Clone, Debug, Default)]
pub struct SindepReport {
    pub cases: u64,
    pub violations: Vec<SindepViolation>,
}

fn sindep_expected(a_set: Monomial, b_set: Monomial, r: u32) -> i64 {
    if !b_set.contains(a_set) {
        return 0;
    }
    let (a, b) = (a_set.degree(), b_set.degree());
    let d = b - r;
    let base = s_dn(d, b - a);
    if ((r - a) * d) % 2 == 0 {
        base
    } else {
        -base
    }
}

fn check_sindep_case(report: &mut SindepReport, a_set: Monomial, b_set: Monomial, r: u32, n: u32) {
    let got = s_r(a_set, b_set, r, n).expect("bounds pre-checked");
    let expected = sindep_expected(a_set, b_set, r);
    report.cases += 1;
    if got != expected {
        report.violations.push(SindepViolation { a_set, b_set, r, n, got, expected });
    }
}

/// Check the subset-sum identity exhaustively for every `(A, B, r)` with
/// `n <= max_exhaustive_n`, plus `random_cases` sampled cases with
/// `n <= random_max_n`.
pub fn verify_sindep(
    max_exhaustive_n: u32,
    random_cases: u64,
    random_max_n: u32,
    seed: u64,
) -> SindepReport {
    let mut report = SindepReport::default();
    for n in 1..=max_exhaustive_n {
        let full = Monomial::full(n).0;
        for b_mask in 0..=full {
            let b_set = Monomial(b_mask);
            let b = b_set.degree();
            if b == 0 {
                continue;
            }
            for a_mask in 0..=full {
                let a_set = Monomial(a_mask);
                let a = a_set.degree();
                if a >= b {
                    continue;
                }
                for r in a..b {
                    check_sindep_case(&mut report, a_set, b_set, r, n);
                }
            }
        }
    }
    let mut state = seed ^ 0x5851F42D4C957F2D;
    let mut next = move || {
        state = state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    };
    let mut produced = 0u64;
    while produced < random_cases {
        let n = 2 + (next() % (random_max_n as u64 - 1)) as u32;
        let full = Monomial::full(n).0;
        let b_set = Monomial(next() & full);
        let a_set = if next() % 4 == 0 {
            Monomial(next() & full) // allow A ⊄ B cases
        } else {
            Monomial(next() & b_set.0)
        };
        let (a, b) = (a_set.degree(), b_set.degree());
        if a >= b {
            continue;
        }
        let r = a + (next() % (b - a) as u64) as u32;
        check_sindep_case(&mut report, a_set, b_set, r, n);
        produced += 1;
    }
    report
}

/// Outcome of a full-rank certification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FullRankCheck {
    pub rank: usize,
    pub expected: usize,
    pub certified: bool,
}

/// Rank of the signed incidence matrix over F_p, for any parity (an
/// exploration path; nothing is asserted about odd differences).
pub fn rank_signed(field: PrimeField, a: u32, b: u32, n: u32) -> Result<usize> {
    Ok(build_signed(a, b, n)?.to_field(field).rank())
}

/// Certify that the signed incidence matrix has full rank, for even
/// `b - a`. Entries are ±1, so rank mod p never exceeds the rational rank:
/// reaching `min(C(n,a), C(n,b))` certifies full rank over the rationals.
pub fn verify_fullrank(field: PrimeField, a: u32, b: u32, n: u32) -> Result<FullRankCheck> {
    if (b - a) % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "theorem hypothesis violated: b - a = {} is odd",
            b - a
        )));
    }
    let m = build_signed(a, b, n)?;
    let expected = m.rows().min(m.cols());
    let rank = m.to_field(field).rank();
    Ok(FullRankCheck { rank, expected, certified: rank == expected })
}

/// Certify full rank of the unsigned inclusion matrix of r-subsets into
/// (r+d)-subsets (all entries specialised to one).
pub fn verify_unsigned_fullrank(field: PrimeField, r: u32, d: u32, n: u32) -> Result<FullRankCheck> {
    if r + d > n || n > combin::MAX_VARS {
        return Err(Error::InvalidArgument(format!(
            "require r + d <= n <= {}, got ({r}, {d}, {n})",
            combin::MAX_VARS
        )));
    }
    let rows = binom_u64(n, r + d) as usize;
    let cols = binom_u64(n, r) as usize;
    let mut m = FieldMatrix::zeros(field, rows, cols);
    for (row, kset) in combin::subsets(n, r + d).enumerate() {
        for c in combin::subsets_of(kset, r) {
            m.set(row, combin::rank_subset(c) as usize, 1);
        }
    }
    let expected = rows.min(cols);
    let rank = m.rank();
    Ok(FullRankCheck { rank, expected, certified: rank == expected })
}
