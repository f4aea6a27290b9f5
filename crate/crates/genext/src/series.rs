//! Exact integer polynomials in one variable `t`: ring arithmetic, the
//! coefficientwise order and max, head/tail truncation, order, and `(1+t)^n`.
//!
//! Rendering is descending (`5t^2+4t+1`); the machine form is the ascending
//! coefficient vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combin;
use crate::error::{Error, Result};

/// A polynomial in `t` with big-integer coefficients, stored ascending by
/// degree with trailing zeros trimmed. The empty vector is the zero series.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn zero() -> IntSeries {
        IntSeries { coeffs: Vec::new() }
    }

    pub fn one() -> IntSeries {
        IntSeries::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> IntSeries {
        IntSeries::from_coeffs(vec![c.into()])
    }

    /// The single term `c * t^deg`.
    pub fn monomial(deg: usize, c: impl Into<BigInt>) -> IntSeries {
        let c = c.into();
        if c.is_zero() {
            return IntSeries::zero();
        }
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c;
        IntSeries { coeffs }
    }

    pub fn from_coeffs<T: Into<BigInt>>(coeffs: Vec<T>) -> IntSeries {
        let mut s = IntSeries { coeffs: coeffs.into_iter().map(Into::into).collect() };
        s.trim();
        s
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; `None` for the zero series.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficients in canonical (trimmed) form.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Multiply by `t^k`; `k` may be negative, in which case the order of the
    /// series must be at least `-k`.
    pub fn shift(&self, k: i64) -> Result<IntSeries> {
        if self.is_zero() {
            return Ok(IntSeries::zero());
        }
        if k >= 0 {
            let mut coeffs = vec![BigInt::zero(); k as usize];
            coeffs.extend(self.coeffs.iter().cloned());
            return Ok(IntSeries { coeffs });
        }
        let down = (-k) as usize;
        let order = self.order().expect("nonzero");
        if order < down {
            return Err(Error::NonPolynomialShift { order, shift: down });
        }
        Ok(IntSeries { coeffs: self.coeffs[down..].to_vec() })
    }

    /// Coefficientwise comparison; missing coefficients count as zero.
    pub fn geq(&self, other: &IntSeries) -> bool {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).all(|i| self.coeff(i) >= other.coeff(i))
    }

    /// Coefficientwise maximum.
    pub fn coeff_max(&self, other: &IntSeries) -> IntSeries {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntSeries::from_coeffs((0..len).map(|i| self.coeff(i).max(other.coeff(i))).collect::<Vec<_>>())
    }

    /// Coefficientwise minimum.
    pub fn coeff_min(&self, other: &IntSeries) -> IntSeries {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntSeries::from_coeffs((0..len).map(|i| self.coeff(i).min(other.coeff(i))).collect::<Vec<_>>())
    }

    /// Head truncation `⟨f⟩`: keep the maximal initial run of strictly
    /// positive coefficients; zero when the constant term is not positive.
    pub fn head_truncate(&self) -> IntSeries {
        let kept: Vec<BigInt> =
            self.coeffs.iter().take_while(|c| c.is_positive()).cloned().collect();
        IntSeries { coeffs: kept }
    }

    /// Tail truncation `⟩f⟨`: keep the maximal final run of strictly positive
    /// coefficients within the support; zero when the leading coefficient is
    /// not positive.
    pub fn tail_truncate(&self) -> IntSeries {
        let mut start = self.coeffs.len();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_positive() {
                start = i;
            } else {
                break;
            }
        }
        if start == self.coeffs.len() {
            return IntSeries::zero();
        }
        let mut coeffs = vec![BigInt::zero(); start];
        coeffs.extend_from_slice(&self.coeffs[start..]);
        IntSeries { coeffs }
    }

    /// Smallest degree with a nonzero coefficient.
    pub fn order(&self) -> Result<usize> {
        self.coeffs.iter().position(|c| !c.is_zero()).ok_or(Error::OrderUndefined)
    }

    /// `(1 + t)^n`.
    pub fn binom_pow(n: u32) -> IntSeries {
        IntSeries {
            coeffs: (0..=n).map(|k| combin::binomial(n as u64, k as i64)).collect(),
        }
    }

    /// Drop all terms of degree greater than `max_deg`.
    pub fn truncated(&self, max_deg: usize) -> IntSeries {
        if self.coeffs.len() <= max_deg + 1 {
            return self.clone();
        }
        IntSeries::from_coeffs(self.coeffs[..=max_deg].to_vec())
    }

    /// Exact polynomial division; errors when a remainder is left. The
    /// divisor's leading coefficient must divide exactly at every step (the
    /// crate only divides by monic polynomials such as `1 + t^d`).
    pub fn exact_div(&self, divisor: &IntSeries) -> Result<IntSeries> {
        if divisor.is_zero() {
            return Err(Error::InvalidArgument("division by the zero series".into()));
        }
        if self.is_zero() {
            return Ok(IntSeries::zero());
        }
        let dd = divisor.degree().expect("nonzero");
        let lead = divisor.coeffs.last().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let nd = rem.len() - 1;
        if nd < dd {
            return Err(Error::NonExactDivision { remainder: self.to_string() });
        }
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            if (&top % lead) != BigInt::zero() {
                return Err(Error::NonExactDivision {
                    remainder: IntSeries::from_coeffs(rem).to_string(),
                });
            }
            let q = &top / lead;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        let remainder = IntSeries::from_coeffs(rem);
        if !remainder.is_zero() {
            return Err(Error::NonExactDivision { remainder: remainder.to_string() });
        }
        Ok(IntSeries::from_coeffs(quot))
    }

    /// Coefficients as `i128` for machine-readable reports.
    pub fn to_i128_coeffs(&self) -> Result<Vec<i128>> {
        self.coeffs
            .iter()
            .map(|c| {
                i128::try_from(c).map_err(|_| {
                    Error::InvalidArgument(format!("coefficient {c} does not fit in 128 bits"))
                })
            })
            .collect()
    }
}

impl Add for &IntSeries {
    type Output = IntSeries;
    fn add(self, rhs: &IntSeries) -> IntSeries {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntSeries::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect::<Vec<_>>())
    }
}

impl Sub for &IntSeries {
    type Output = IntSeries;
    fn sub(self, rhs: &IntSeries) -> IntSeries {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntSeries::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect::<Vec<_>>())
    }
}

impl Mul for &IntSeries {
    type Output = IntSeries;
    fn mul(self, rhs: &IntSeries) -> IntSeries {
        if self.is_zero() || rhs.is_zero() {
            return IntSeries::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntSeries::from_coeffs(coeffs)
    }
}

impl Neg for &IntSeries {
    type Output = IntSeries;
    fn neg(self) -> IntSeries {
        IntSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for IntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mag = c.magnitude();
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
