//! Square-free monomials as bitmasks, merge and wedge signs, binomial
//! coefficients, and colexicographic subset ranking.
//!
//! Every matrix in the crate indexes its rows and columns by the colex order
//! produced here, so ranking, unranking and enumeration must agree exactly.

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Largest supported number of variables; a monomial must fit one machine word.
pub const MAX_VARS: u32 = 62;

/// A square-free monomial over `x_1..x_n`, encoded as a bitmask with bit
/// `i - 1` set iff `x_i` is present. The ambient `n` is carried by context.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial(pub u64);

impl Monomial {
    pub const EMPTY: Monomial = Monomial(0);

    /// The full monomial `x_1 x_2 ... x_n`.
    pub fn full(n: u32) -> Monomial {
        debug_assert!(n <= MAX_VARS);
        if n == 0 {
            Monomial(0)
        } else {
            Monomial(u64::MAX >> (64 - n))
        }
    }

    /// Build from 1-based variable indices.
    pub fn from_vars(vars: &[u32]) -> Monomial {
        let mut mask = 0u64;
        for &v in vars {
            debug_assert!((1..=MAX_VARS).contains(&v), "variable index {v} out of range");
            mask |= 1 << (v - 1);
        }
        Monomial(mask)
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// True when `other` divides `self` (as square-free monomials: subset).
    pub fn contains(self, other: Monomial) -> bool {
        other.0 & !self.0 == 0
    }

    pub fn intersects(self, other: Monomial) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }

    /// Set difference `self \ other`.
    pub fn minus(self, other: Monomial) -> Monomial {
        Monomial(self.0 & !other.0)
    }

    /// 1-based variable indices in ascending order.
    pub fn vars(self) -> impl Iterator<Item = u32> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros();
                m &= m - 1;
                Some(i + 1)
            }
        })
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (i, v) in self.vars().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

/// A sign in `{-1, 0, +1}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Zero => 0,
            Sign::Plus => 1,
        }
    }

    pub fn from_parity(k: u32) -> Sign {
        if k % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, Sign::Zero)
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (Sign::Plus, s) | (s, Sign::Plus) => s,
            (Sign::Minus, Sign::Minus) => Sign::Plus,
        }
    }
}

/// Sign of the permutation sorting the list `[C, R \ C]` into ascending
/// order; zero when `C` is not a subset of `R`.
///
/// Both blocks are internally sorted, so the inversion count is the number of
/// pairs `(c, r)` with `c` in `C`, `r` in `R \ C`, `r < c` — a masked
/// popcount per element of `C`.
pub fn sigma(c: Monomial, r: Monomial) -> Sign {
    if !r.contains(c) {
        return Sign::Zero;
    }
    let rest = r.0 & !c.0;
    let mut inversions = 0u32;
    let mut m = c.0;
    while m != 0 {
        let low = m & m.wrapping_neg();
        inversions += (rest & (low - 1)).count_ones();
        m &= m - 1;
    }
    Sign::from_parity(inversions)
}

/// Sign `eps` in `x_A ∧ x_B = eps * x_{A ∪ B}`: zero when the supports
/// overlap, otherwise the merge sign of `A` into `A ∪ B`.
pub fn wedge_sign(a: Monomial, b: Monomial) -> Sign {
    if a.intersects(b) {
        Sign::Zero
    } else {
        sigma(a, a.union(b))
    }
}

const PASCAL_DIM: usize = 65;

/// Pascal's triangle through `n = 64`; `C(64, 32)` still fits a `u64`.
static PASCAL: [[u64; PASCAL_DIM]; PASCAL_DIM] = build_pascal();

const fn build_pascal() -> [[u64; PASCAL_DIM]; PASCAL_DIM] {
    let mut t = [[0u64; PASCAL_DIM]; PASCAL_DIM];
    let mut n = 0;
    while n < PASCAL_DIM {
        t[n][0] = 1;
        let mut k = 1;
        while k <= n {
            t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
            k += 1;
        }
        n += 1;
    }
    t
}

/// Word-sized binomial coefficient for indexing; requires `n <= 64`.
pub fn binom_u64(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    assert!((n as usize) < PASCAL_DIM, "binom_u64 supports n <= 64, got {n}");
    PASCAL[n as usize][k as usize]
}

/// Binomial coefficient as a big integer; zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::from(0);
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::from(1u32);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Colexicographic rank of a monomial among all subsets of its degree.
///
/// For `{c_1 < ... < c_k}` the rank is `sum_i C(c_i - 1, i)`; it does not
/// depend on the ambient `n`.
pub fn rank_subset(m: Monomial) -> u64 {
    let mut rank = 0u64;
    for (i, v) in m.vars().enumerate() {
        rank += binom_u64(v - 1, i as u32 + 1);
    }
    rank
}

/// Inverse of [`rank_subset`] over degree-`k` subsets of `[n]`.
pub fn unrank_subset(n: u32, k: u32, index: u64) -> Result<Monomial> {
    if index >= binom_u64(n, k) {
        return Err(Error::IndexOutOfRange { what: "colex subset rank", index });
    }
    let mut rem = index;
    let mut mask = 0u64;
    let mut c = n;
    for i in (1..=k).rev() {
        while binom_u64(c - 1, i) > rem {
            c -= 1;
        }
        rem -= binom_u64(c - 1, i);
        mask |= 1 << (c - 1);
    }
    Ok(Monomial(mask))
}

/// All degree-`k` monomials over `[n]` in colexicographic order.
///
/// Numeric order on masks is colex order on subsets (the highest differing
/// bit decides both), so Gosper's hack enumerates exactly in rank order.
pub fn subsets(n: u32, k: u32) -> impl Iterator<Item = Monomial> {
    let count = binom_u64(n, k);
    let mut cur = if k == 0 { 0u64 } else { (1u64 << k) - 1 };
    let mut produced = 0u64;
    std::iter::from_fn(move || {
        if produced == count {
            return None;
        }
        let out = Monomial(cur);
        produced += 1;
        if produced < count {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            cur = (((r ^ cur) >> 2) / c) | r;
        }
        Some(out)
    })
}

/// All degree-`k` sub-monomials of `support`, in colex order of positions.
pub fn subsets_of(support: Monomial, k: u32) -> impl Iterator<Item = Monomial> {
    let positions: Vec<u32> = support.vars().collect();
    let m = positions.len() as u32;
    subsets(m, k).map(move |pattern| {
        let mut mask = 0u64;
        for p in pattern.vars() {
            mask |= 1 << (positions[(p - 1) as usize] - 1);
        }
        Monomial(mask)
    })
}
